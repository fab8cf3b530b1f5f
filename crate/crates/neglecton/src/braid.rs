//! R-matrix, braiding, and twist operators on weight modules.

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::module::WeightModule;
use num_complex::Complex64 as C64;

/// The R-matrix on V x W:
/// `R = q^{H x H / 2} sum_{n=0}^{r-1} ({1}^{2n} / {n}!) q^{n(n-1)/2} E^n x F^n`.
pub fn r_matrix(v: &WeightModule, w: &WeightModule) -> CMat {
    let rd = v.rd;
    let dim = v.dim * w.dim;
    let mut sum = CMat::zeros(dim, dim);
    let mut en = CMat::identity(v.dim);
    let mut fn_ = CMat::identity(w.dim);
    for n in 0..rd.r {
        if n > 0 {
            en = en.mul(&v.e);
            fn_ = fn_.mul(&w.f);
        }
        let coeff = rd.brace(1.0).powu(2 * n) / rd.brace_factorial(n)
            * rd.qpow((n * (n.max(1) - 1)) as f64 / 2.0);
        sum = sum.add(&en.kron(&fn_).scale(coeff));
    }
    // diagonal factor q^{lambda lambda' / 2}
    let mut out = sum;
    for (i, &a) in v.weights.iter().enumerate() {
        for (j, &b) in w.weights.iter().enumerate() {
            let row = i * w.dim + j;
            let d = rd.qpow(a * b / 2.0);
            for col in 0..dim {
                out[(row, col)] *= d;
            }
        }
    }
    out
}

/// The flip permutation tau: V x W -> W x V in lexicographic bases.
pub fn flip(dim_v: usize, dim_w: usize) -> CMat {
    let mut p = CMat::zeros(dim_v * dim_w, dim_v * dim_w);
    for i in 0..dim_v {
        for j in 0..dim_w {
            p[(j * dim_v + i, i * dim_w + j)] = crate::linalg::ONE;
        }
    }
    p
}

/// Braiding c_{VW} = tau o R : V x W -> W x V.
pub fn braiding(v: &WeightModule, w: &WeightModule) -> CMat {
    flip(v.dim, w.dim).mul(&r_matrix(v, w))
}

/// The twist map theta_V : v -> theta^{-1} v, where
/// `theta = K^{r-1} sum_n ({1}^{2n}/{n}!) q^{n(n-1)/2} S(F)^n q^{-H^2/2} E^n`
/// and q^{-H^2/2} acts diagonally by q^{-lambda^2/2}.
pub fn twist_map(v: &WeightModule) -> CMat {
    let rd = v.rd;
    let sf = v.k().mul(&v.f).scale(C64::new(-1.0, 0.0)); // S(F) = -K F
    let qh = CMat::diag(
        &v.weights.iter().map(|&w| rd.qpow(-w * w / 2.0)).collect::<Vec<_>>(),
    );
    let mut acc = CMat::zeros(v.dim, v.dim);
    let mut sfn = CMat::identity(v.dim);
    let mut en = CMat::identity(v.dim);
    for n in 0..rd.r {
        if n > 0 {
            sfn = sfn.mul(&sf);
            en = en.mul(&v.e);
        }
        let coeff = rd.brace(1.0).powu(2 * n) / rd.brace_factorial(n)
            * rd.qpow((n * (n.max(1) - 1)) as f64 / 2.0);
        acc = acc.add(&sfn.mul(&qh).mul(&en).scale(coeff));
    }
    let theta = v.k().pow(rd.r - 1).mul(&acc);
    theta.inverse().expect("twist operator must be invertible")
}

/// Twist on an asserted-simple module: returns the scalar, or NonScalarTwist.
pub fn twist_scalar(v: &WeightModule, tol: f64) -> Result<C64> {
    let t = twist_map(v);
    let s = t[(0, 0)];
    let dev = t.sub(&CMat::identity(v.dim).scale(s)).max_norm();
    if dev > tol {
        return Err(Error::NonScalarTwist(v.name.clone(), dev));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{intertwiner_residual, make_neglecton, make_simple, tensor};
    use crate::root::RootData;

    fn rd() -> RootData {
        RootData::default()
    }

    #[test]
    fn braiding_with_unit_is_flip() {
        let r = rd();
        let s0 = make_simple(0, r).unwrap();
        let va = make_neglecton(2.3, r).unwrap();
        let c = braiding(&s0, &va);
        // on S0 x V the R-matrix is trivial, so c is the flip = identity here
        assert!(c.sub(&CMat::identity(4)).max_norm() < 1e-13);
    }

    #[test]
    fn braiding_s1_s1_matches_r_matrix_formula() {
        let r = rd();
        let s1 = make_simple(1, r).unwrap();
        let c = braiding(&s1, &s1);
        let q = r.q();
        let qh = r.qpow(0.5);
        let qmh = r.qpow(-0.5);
        // forced by the displayed R-matrix: the (4,4) entry is q^{1/2}
        // (the printed example shows q^{-1/2} there, which contradicts the
        // operator formula: s_1 x s_1 has weight product (+1), not (-1)).
        assert!((c[(0, 0)] - qh).norm() < 1e-13);
        assert!((c[(1, 2)] - qmh).norm() < 1e-13);
        assert!((c[(2, 1)] - qmh).norm() < 1e-13);
        assert!((c[(2, 2)] - (q - q.inv()) * qmh).norm() < 1e-13);
        assert!((c[(3, 3)] - qh).norm() < 1e-13);
    }

    #[test]
    fn braiding_is_equivariant() {
        let r = rd();
        let s1 = make_simple(1, r).unwrap();
        let va = make_neglecton(2.3, r).unwrap();
        let c = braiding(&va, &s1);
        let dom = tensor(&va, &s1);
        let cod = tensor(&s1, &va);
        assert!(intertwiner_residual(&c, &dom, &cod) < 1e-9);
    }

    #[test]
    fn yang_baxter_on_triples() {
        let r = rd();
        let s1 = make_simple(1, r).unwrap();
        let s2 = make_simple(2, r).unwrap();
        let va = make_neglecton(2.3, r).unwrap();
        for (a, b, c3) in [(&s1, &s1, &va), (&va, &s1, &s1), (&s1, &s2, &va)] {
            let res = yang_baxter_residual(a, b, c3);
            assert!(res < 1e-9, "YB residual {res}");
        }
    }

    /// ((c x 1)(1 x c)(c x 1) - (1 x c)(c x 1)(1 x c)) in the strand picture.
    pub fn yang_baxter_residual(v1: &WeightModule, v2: &WeightModule, v3: &WeightModule) -> f64 {
        let i1 = CMat::identity(v1.dim);
        let i2 = CMat::identity(v2.dim);
        let i3 = CMat::identity(v3.dim);
        let path_a = braiding(v2, v3)
            .kron(&i1)
            .mul(&i2.kron(&braiding(v1, v3)))
            .mul(&braiding(v1, v2).kron(&i3));
        let path_b = i3
            .kron(&braiding(v1, v2))
            .mul(&braiding(v1, v3).kron(&i2))
            .mul(&i1.kron(&braiding(v2, v3)));
        path_a.sub(&path_b).max_norm()
    }

    #[test]
    fn twist_scalars_match_closed_form() {
        let r = rd();
        for n in 0..4u32 {
            let m = make_simple(n, r).unwrap();
            let t = twist_scalar(&m, 1e-9).unwrap();
            let expect = r.qpow(n as f64 * (n as f64 + 2.0 - 2.0 * r.r as f64) / 2.0);
            assert!((t - expect).norm() < 1e-12, "S_{n}");
        }
        for a in [2.3, 0.7] {
            let m = make_neglecton(a, r).unwrap();
            let t = twist_scalar(&m, 1e-9).unwrap();
            let expect = r.qpow((a * a - 9.0) / 2.0);
            assert!((t - expect).norm() < 1e-12, "V_{a}");
        }
        // S0 -> identity, S1 -> q^{-5/2}
        let s1 = make_simple(1, r).unwrap();
        assert!((twist_scalar(&s1, 1e-9).unwrap() - r.qpow(-2.5)).norm() < 1e-12);
    }

    #[test]
    fn ribbon_identity_on_products() {
        // theta_{V x W} = c_{WV} c_{VW} (theta_V x theta_W) as twist maps.
        let r = rd();
        let s1 = make_simple(1, r).unwrap();
        let va = make_neglecton(2.3, r).unwrap();
        for (v, w) in [(&s1, &s1), (&va, &s1), (&s1, &va)] {
            let t_prod = twist_map(&tensor(v, w));
            let lhs = braiding(w, v)
                .mul(&braiding(v, w))
                .mul(&twist_map(v).kron(&twist_map(w)));
            assert!(t_prod.sub(&lhs).max_norm() < 1e-8);
        }
    }
}
