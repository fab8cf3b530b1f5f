//! Root-of-unity data: q = exp(i pi / r), quantum numbers, and the trace
//! normalization constant.

use num_complex::Complex64 as C64;

/// The root of unity the whole theory is evaluated at, together with the
/// modified-trace normalization `d0`.
///
/// All q-powers are computed as `exp(i pi x / r)` from the exponent rather
/// than by repeated multiplication, so fractional powers stay on one branch.
#[derive(Debug, Clone, Copy)]
pub struct RootData {
    pub r: u32,
    pub d0: f64,
}

impl Default for RootData {
    fn default() -> Self {
        RootData { r: 4, d0: -4.0 }
    }
}

impl RootData {
    pub fn new(r: u32, d0: f64) -> Self {
        assert!(r >= 2 && r.is_multiple_of(2), "r must be a positive even integer");
        RootData { r, d0 }
    }

    /// q = exp(i pi / r), a primitive 2r-th root of unity.
    pub fn q(&self) -> C64 {
        self.qpow(1.0)
    }

    /// q^x for real x.
    pub fn qpow(&self, x: f64) -> C64 {
        C64::from_polar(1.0, std::f64::consts::PI * x / self.r as f64)
    }

    /// {x} = q^x - q^{-x}.
    pub fn brace(&self, x: f64) -> C64 {
        self.qpow(x) - self.qpow(-x)
    }

    /// [x] = {x} / {1}.
    pub fn qnum(&self, x: f64) -> C64 {
        self.brace(x) / self.brace(1.0)
    }

    /// {n}! = {n}{n-1}...{1}, with {0}! = 1.
    pub fn brace_factorial(&self, n: u32) -> C64 {
        let mut acc = C64::new(1.0, 0.0);
        for k in 1..=n {
            acc *= self.brace(k as f64);
        }
        acc
    }

    /// Modified dimension of the neglecton V_alpha: d0 {alpha} / {r alpha}.
    pub fn modified_dimension(&self, alpha: f64) -> f64 {
        let r = self.r as f64;
        // {a}/{ra} = sin(pi a / r) / sin(pi a); both braces are purely imaginary.
        self.d0 * (std::f64::consts::PI * alpha / r).sin() / (std::f64::consts::PI * alpha).sin()
    }

    /// Residuals of the defining identities |q|=1, q^{2r}=1, [1]=1, [r]=0.
    pub fn sanity_residual(&self) -> f64 {
        let q = self.q();
        let r = self.r as f64;
        let e1 = (q.norm() - 1.0).abs();
        let e2 = (self.qpow(2.0 * r) - C64::new(1.0, 0.0)).norm();
        let e3 = (self.qnum(1.0) - C64::new(1.0, 0.0)).norm();
        let e4 = self.qnum(r).norm();
        e1.max(e2).max(e3).max(e4)
    }
}
