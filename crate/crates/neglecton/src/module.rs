//! Weight representations of the unrolled quantum group at q = exp(i pi / r):
//! simples S_n, neglectons V_alpha, one-dimensionals, tensor products, and
//! duality data.

use crate::error::{Error, Result};
use crate::linalg::{CMat, ONE, ZERO};
use crate::root::RootData;
use num_complex::Complex64 as C64;

/// A finite-dimensional weight module: generator matrices plus the weight list.
///
/// Basis convention: index i carries weight `top - 2i` and `F v_i = v_{i+1}`
/// on the cyclic modules (descending weight order).
#[derive(Debug, Clone)]
pub struct WeightModule {
    pub name: String,
    pub rd: RootData,
    pub dim: usize,
    pub weights: Vec<f64>,
    pub e: CMat,
    pub f: CMat,
}

impl WeightModule {
    pub fn k(&self) -> CMat {
        CMat::diag(&self.weights.iter().map(|&w| self.rd.qpow(w)).collect::<Vec<_>>())
    }

    pub fn kinv(&self) -> CMat {
        CMat::diag(&self.weights.iter().map(|&w| self.rd.qpow(-w)).collect::<Vec<_>>())
    }

    pub fn h(&self) -> CMat {
        CMat::diag(&self.weights.iter().map(|&w| C64::new(w, 0.0)).collect::<Vec<_>>())
    }

    /// Max residual over the defining relations: K E K^-1 = q^2 E,
    /// K F K^-1 = q^-2 F, [E,F] = (K - K^-1)/(q - q^-1), E^r = F^r = 0,
    /// and the weight-module condition K = q^H.
    pub fn relation_residual(&self) -> f64 {
        let rd = &self.rd;
        let k = self.k();
        let kinv = self.kinv();
        let q2 = rd.qpow(2.0);
        let qm2 = rd.qpow(-2.0);
        let r1 = k.mul(&self.e).mul(&kinv).sub(&self.e.scale(q2)).max_norm();
        let r2 = k.mul(&self.f).mul(&kinv).sub(&self.f.scale(qm2)).max_norm();
        let comm = self.e.mul(&self.f).sub(&self.f.mul(&self.e));
        let rhs = k.sub(&kinv).scale(1.0 / rd.brace(1.0));
        let r3 = comm.sub(&rhs).max_norm();
        let r4 = self.e.pow(rd.r).max_norm();
        let r5 = self.f.pow(rd.r).max_norm();
        // K = q^H holds by construction of k(); check the graded action instead:
        // E must raise weight by exactly 2, F lower it by 2.
        let mut r6 = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.e[(i, j)].norm() > 1e-13 && (self.weights[i] - self.weights[j] - 2.0).abs() > 1e-9 {
                    r6 = 1.0;
                }
                if self.f[(i, j)].norm() > 1e-13 && (self.weights[j] - self.weights[i] - 2.0).abs() > 1e-9 {
                    r6 = 1.0;
                }
            }
        }
        r1.max(r2).max(r3).max(r4).max(r5).max(r6)
    }

    /// Quantum dimension: trace of K^{1-r} (the e'_V o i_V composite).
    pub fn quantum_dimension(&self) -> C64 {
        self.weights
            .iter()
            .map(|&w| self.rd.qpow((1.0 - self.rd.r as f64) * w))
            .sum()
    }
}

/// The simple module S_n with weights (n, n-2, ..., -n).
///
/// The raising coefficient is E s_i = [i][n-i+1] s_{i-1}; the commutation
/// relation [E,F] = (K - K^-1)/(q - q^-1) fails for the variant [i][n-i]
/// (already on S_1), so the relation checker fixes the convention.
pub fn make_simple(n: u32, rd: RootData) -> Result<WeightModule> {
    if n >= rd.r {
        return Err(Error::InvalidLabel(format!("S_{n} requires n <= r-1 = {}", rd.r - 1)));
    }
    let dim = n as usize + 1;
    let weights: Vec<f64> = (0..dim).map(|i| n as f64 - 2.0 * i as f64).collect();
    let mut e = CMat::zeros(dim, dim);
    let mut f = CMat::zeros(dim, dim);
    for i in 1..dim {
        e[(i - 1, i)] = rd.qnum(i as f64) * rd.qnum(n as f64 - i as f64 + 1.0);
        f[(i, i - 1)] = ONE;
    }
    Ok(WeightModule { name: format!("S{n}"), rd, dim, weights, e, f })
}

/// The r-dimensional neglecton V_alpha with weights alpha + r - 1 - 2i and
/// E v_i = [i][i - alpha] v_{i-1}.
pub fn make_neglecton(alpha: f64, rd: RootData) -> Result<WeightModule> {
    crate::label::check_alpha(alpha, rd.r)?;
    let dim = rd.r as usize;
    let top = alpha + (rd.r - 1) as f64;
    let weights: Vec<f64> = (0..dim).map(|i| top - 2.0 * i as f64).collect();
    let mut e = CMat::zeros(dim, dim);
    let mut f = CMat::zeros(dim, dim);
    for i in 1..dim {
        e[(i - 1, i)] = rd.qnum(i as f64) * rd.qnum(i as f64 - alpha);
        f[(i, i - 1)] = ONE;
    }
    Ok(WeightModule { name: format!("V({alpha})"), rd, dim, weights, e, f })
}

/// One-dimensional module C^H_{k r} of weight k r with E = F = 0.
pub fn make_onedim(k: i32, rd: RootData) -> WeightModule {
    WeightModule {
        name: format!("C({})", k * rd.r as i32),
        rd,
        dim: 1,
        weights: vec![(k * rd.r as i32) as f64],
        e: CMat::zeros(1, 1),
        f: CMat::zeros(1, 1),
    }
}

/// Tensor product with the coproduct action
/// D(E) = 1 x E + E x K, D(F) = K^-1 x F + F x 1, D(H) = H x 1 + 1 x H.
/// Basis is ordered lexicographically (left factor major).
pub fn tensor(v: &WeightModule, w: &WeightModule) -> WeightModule {
    let iv = CMat::identity(v.dim);
    let iw = CMat::identity(w.dim);
    let e = iv.kron(&w.e).add(&v.e.kron(&w.k()));
    let f = v.kinv().kron(&w.f).add(&v.f.kron(&iw));
    let mut weights = Vec::with_capacity(v.dim * w.dim);
    for &a in &v.weights {
        for &b in &w.weights {
            weights.push(a + b);
        }
    }
    WeightModule {
        name: format!("{}*{}", v.name, w.name),
        rd: v.rd,
        dim: v.dim * w.dim,
        weights,
        e,
        f,
    }
}

/// Left-associated tensor product of a list of modules.
pub fn tensor_chain(mods: &[&WeightModule]) -> WeightModule {
    let mut acc = mods[0].clone();
    for m in &mods[1..] {
        acc = tensor(&acc, m);
    }
    acc
}

/// Equivariance residual of `mat` as a morphism dom -> cod.
pub fn intertwiner_residual(mat: &CMat, dom: &WeightModule, cod: &WeightModule) -> f64 {
    let re = cod.e.mul(mat).sub(&mat.mul(&dom.e)).max_norm();
    let rf = cod.f.mul(mat).sub(&mat.mul(&dom.f)).max_norm();
    let rh = cod.h().mul(mat).sub(&mat.mul(&dom.h())).max_norm();
    let rk = cod.k().mul(mat).sub(&mat.mul(&dom.k())).max_norm();
    re.max(rf).max(rh).max(rk)
}

/// The four duality morphisms of V as concrete matrices:
/// coevaluation i_V: C -> V x V*, evaluation e_V: V* x V -> C, and their
/// right-duality partners i'_V, e'_V built from K^{r-1}.
pub struct DualityData {
    /// i_V as a (dim^2 x 1) column: 1 -> sum_i v_i x v_i*.
    pub coev: CMat,
    /// e_V as a (1 x dim^2) row on V* x V: f x w -> f(w).
    pub ev: CMat,
    /// i'_V as a (dim^2 x 1) column on V* x V: 1 -> sum_i v_i* x K^{r-1} v_i.
    pub coev_right: CMat,
    /// e'_V as a (1 x dim^2) row on V x V*: v x f -> f(K^{1-r} v).
    pub ev_right: CMat,
}

pub fn duality_morphisms(v: &WeightModule) -> DualityData {
    let n = v.dim;
    let r = v.rd.r as f64;
    let mut coev = CMat::zeros(n * n, 1);
    let mut ev = CMat::zeros(1, n * n);
    let mut coev_right = CMat::zeros(n * n, 1);
    let mut ev_right = CMat::zeros(1, n * n);
    for i in 0..n {
        // V x V* index (i, j) -> i*n + j ; V* x V index (j, i) -> j*n + i
        coev[(i * n + i, 0)] = ONE;
        ev[(0, i * n + i)] = ONE;
        coev_right[(i * n + i, 0)] = v.rd.qpow((r - 1.0) * v.weights[i]);
        ev_right[(0, i * n + i)] = v.rd.qpow((1.0 - r) * v.weights[i]);
    }
    DualityData { coev, ev, coev_right, ev_right }
}

/// Zig-zag residual of the snake (id_V x e_V)(i_V x id_V) = id_V:
/// v_j -> sum_i v_i x v_i* x v_j -> sum_i v_i e_V(v_i* x v_j).
pub fn zigzag_residual(v: &WeightModule) -> f64 {
    let n = v.dim;
    let dual = duality_morphisms(v);
    let mut out = CMat::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            out[(i, j)] = dual.coev[(i * n + i, 0)] * dual.ev[(0, i * n + j)];
        }
    }
    out.sub(&CMat::identity(n)).max_norm()
}

/// Quantum dimension via the right evaluation against the left coevaluation:
/// <e'_V o i_V> = sum_i v_i*(K^{1-r} v_i).
pub fn quantum_dimension_categorical(v: &WeightModule) -> C64 {
    let dual = duality_morphisms(v);
    let n = v.dim;
    let mut acc = ZERO;
    for i in 0..n {
        acc += dual.ev_right[(0, i * n + i)] * dual.coev[(i * n + i, 0)];
    }
    acc
}
