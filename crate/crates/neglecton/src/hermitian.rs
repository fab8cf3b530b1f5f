//! Hermitian structures: forms on simples and tensor products, adjoints,
//! bubble-pop coefficients, modified dimensions and the modified trace.

use crate::braid::braiding;
use crate::error::{Error, Result};
use crate::fusion::Theory;
use crate::label::Label;
use crate::linalg::CMat;
use crate::module::{tensor, WeightModule};
use num_complex::Complex64 as C64;
use std::rc::Rc;

/// A Hermitian form, stored as its Gram matrix in the module basis.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    pub name: String,
    pub gram: CMat,
}

impl HermitianForm {
    pub fn hermiticity_residual(&self) -> f64 {
        self.gram.sub(&self.gram.dagger()).max_norm()
    }

    /// Compatibility with the dagger structure on generators:
    /// E^H g = g F, H^H g = g H, K^H g = g K^{-1}.
    pub fn compatibility_residual(&self, m: &WeightModule) -> f64 {
        let g = &self.gram;
        let r1 = m.e.dagger().mul(g).sub(&g.mul(&m.f)).max_norm();
        let r2 = m.h().dagger().mul(g).sub(&g.mul(&m.h())).max_norm();
        let r3 = m.k().dagger().mul(g).sub(&g.mul(&m.kinv())).max_norm();
        r1.max(r2).max(r3)
    }
}

/// Diagonal form on an F-cyclic module: eta = diag(1, b_1, b_1 b_2, ...)
/// with b_i the raising coefficients E v_i = b_i v_{i-1}.
pub fn eta_simple(m: &WeightModule) -> HermitianForm {
    let mut d = vec![C64::new(1.0, 0.0)];
    for i in 1..m.dim {
        let beta = m.e[(i - 1, i)];
        d.push(d[i - 1] * beta);
    }
    HermitianForm { name: format!("eta[{}]", m.name), gram: CMat::diag(&d) }
}

/// Half-twist scalar on a simple label: q^{i(i+2-2r)/4} on S_i and
/// q^{(alpha^2-(r-1)^2)/4} on V_alpha.
pub fn sqrt_twist_scalar(theory: &Theory, l: Label) -> C64 {
    let rd = theory.rd;
    let r = rd.r as f64;
    match l {
        Label::S(i) => {
            let i = i as f64;
            rd.qpow(i * (i + 2.0 - 2.0 * r) / 4.0)
        }
        Label::V(_) => {
            let a = theory.alpha_of(l);
            rd.qpow((a * a - (r - 1.0) * (r - 1.0)) / 4.0)
        }
        Label::C(k) => {
            // weight kr with trivial E, F: theta acts by q^{(r-1)kr - (kr)^2/2};
            // take the principal half.
            let w = (k * rd.r as i32) as f64;
            rd.qpow(((r - 1.0) * w - w * w / 2.0) / -2.0)
        }
    }
}

/// One isotypic piece of a decomposition into simples: the label-equivalent
/// top weight and the embedding spanned by an F-orbit.
pub struct SimplePiece {
    pub top_weight: f64,
    pub orbit_dim: usize,
    pub embedding: CMat,
}

/// Decompose a weight module into simple F-orbits by finding all
/// highest-weight vectors. Errors with UnsupportedDecomposition when the
/// orbits do not fill the module (a projective cover is present).
pub fn decompose(m: &WeightModule) -> Result<Vec<SimplePiece>> {
    let mut pieces: Vec<SimplePiece> = Vec::new();
    let mut weights: Vec<f64> = m.weights.clone();
    weights.sort_by(|a, b| b.partial_cmp(a).unwrap());
    weights.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let mut total = 0usize;
    for lam in weights {
        let stacked = m
            .e
            .vstack(&m.h().sub(&CMat::identity(m.dim).scale(C64::new(lam, 0.0))));
        for v in stacked.nullspace(crate::fusion::NULLSPACE_TOL) {
            let mut cols = vec![v];
            loop {
                let next = m.f.matvec(cols.last().unwrap());
                let norm: f64 = next.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-9 {
                    break;
                }
                cols.push(next);
            }
            total += cols.len();
            pieces.push(SimplePiece {
                top_weight: lam,
                orbit_dim: cols.len(),
                embedding: CMat::from_columns(&cols),
            });
        }
    }
    if total != m.dim {
        return Err(Error::UnsupportedDecomposition(format!(
            "{}: orbits cover {total} of {} dimensions",
            m.name, m.dim
        )));
    }
    Ok(pieces)
}

impl Theory {
    /// Half-twist scalar of a top weight found by decomposition: an orbit of
    /// dimension r is a neglecton V_(top - r + 1), anything shorter is S_n.
    fn sqrt_twist_of_piece(&self, piece: &SimplePiece) -> C64 {
        let rd = self.rd;
        let r = rd.r as f64;
        if piece.orbit_dim == rd.r as usize {
            let a = piece.top_weight - r + 1.0;
            rd.qpow((a * a - (r - 1.0) * (r - 1.0)) / 4.0)
        } else {
            let i = piece.top_weight;
            rd.qpow(i * (i + 2.0 - 2.0 * r) / 4.0)
        }
    }

    /// Half-twist operator on an arbitrary decomposable module:
    /// U (direct sum of half-twist scalars) U^{-1} over the simple pieces.
    pub fn sqrt_twist_module(&self, m: &WeightModule) -> Result<CMat> {
        let pieces = decompose(m)?;
        let mut cols: Vec<Vec<C64>> = Vec::new();
        let mut scalars: Vec<C64> = Vec::new();
        for p in &pieces {
            let s = self.sqrt_twist_of_piece(p);
            for j in 0..p.embedding.cols {
                cols.push(p.embedding.column(j));
                scalars.push(s);
            }
        }
        let u = CMat::from_columns(&cols);
        let uinv = u
            .inverse()
            .ok_or_else(|| Error::UnsupportedDecomposition(format!("{}: singular U", m.name)))?;
        Ok(u.mul(&CMat::diag(&scalars)).mul(&uinv))
    }

    /// X_{VW} = (sqrt-theta_{W x V})^{-1} c_{VW} (sqrt-theta_V x sqrt-theta_W)
    /// for simple labels V, W.
    pub fn x_map(&self, v: Label, w: Label) -> Result<CMat> {
        let mv = self.module(v);
        let mw = self.module(w);
        let wv = tensor(&mw, &mv);
        let st_wv = self.sqrt_twist_module(&wv)?;
        let st_v = sqrt_twist_scalar(self, v);
        let st_w = sqrt_twist_scalar(self, w);
        let c = braiding(&mv, &mw);
        let left = st_wv
            .inverse()
            .ok_or_else(|| Error::UnsupportedDecomposition("singular sqrt twist".into()))?;
        Ok(left.mul(&c).scale(st_v * st_w))
    }

    /// Gram matrix of the Hermitian form on a simple label.
    pub fn gram_simple(&self, l: Label) -> Rc<CMat> {
        if let Some(g) = self.gram_cache.borrow().get(&l) {
            return g.clone();
        }
        let g = Rc::new(eta_simple(&self.module(l)).gram);
        self.gram_cache.borrow_mut().insert(l, g.clone());
        g
    }

    /// Gram matrix on the binary product v x w: the naive Kronecker form
    /// composed with tau X, stored as one corrected Gram.
    pub fn gram_pair(&self, v: Label, w: Label) -> Result<Rc<CMat>> {
        if let Some(g) = self.gram_pair_cache.borrow().get(&(v, w)) {
            return Ok(g.clone());
        }
        let naive = self.gram_simple(v).kron(&self.gram_simple(w));
        let mv = self.module(v);
        let mw = self.module(w);
        let tau = crate::braid::flip(mw.dim, mv.dim);
        let eta = tau.mul(&self.x_map(v, w)?);
        let g = Rc::new(naive.mul(&eta));
        self.gram_pair_cache.borrow_mut().insert((v, w), g.clone());
        Ok(g)
    }

    /// Gram matrix on a left-associated chain l1 x l2 x ... x lk, built by
    /// recursion: the form on (X) x C uses the already-built form on X.
    pub fn gram_chain(&self, labels: &[Label]) -> Result<CMat> {
        assert!(!labels.is_empty());
        if labels.len() == 1 {
            return Ok((*self.gram_simple(labels[0])).clone());
        }
        if labels.len() == 2 {
            return Ok((*self.gram_pair(labels[0], labels[1])?).clone());
        }
        let head = &labels[..labels.len() - 1];
        let last = labels[labels.len() - 1];
        let g_head = self.gram_chain(head)?;
        let m_head = self.chain_module(head);
        let m_last = self.module(last);
        // X map for the pair (head, last)
        let prod_rev = tensor(&m_last, &m_head);
        let st_rev = self.sqrt_twist_module(&prod_rev)?;
        let st_head = self.sqrt_twist_module(&m_head)?;
        let st_last = sqrt_twist_scalar(self, last);
        let c = braiding(&m_head, &m_last);
        let x = st_rev
            .inverse()
            .ok_or_else(|| Error::UnsupportedDecomposition("singular sqrt twist".into()))?
            .mul(&c)
            .mul(&st_head.kron(&CMat::identity(m_last.dim)).scale(st_last));
        let tau = crate::braid::flip(m_last.dim, m_head.dim);
        let naive = g_head.kron(&self.gram_simple(last));
        Ok(naive.mul(&tau.mul(&x)))
    }

    /// The left-associated tensor module of a label chain.
    pub fn chain_module(&self, labels: &[Label]) -> WeightModule {
        let mut acc = (*self.module(labels[0])).clone();
        for &l in &labels[1..] {
            acc = tensor(&acc, &self.module(l));
        }
        acc
    }

    /// Form-adjoint of f: dom -> cod, namely g_dom^{-1} f^H g_cod.
    pub fn adjoint(&self, f: &CMat, gram_dom: &CMat, gram_cod: &CMat) -> Result<CMat> {
        let inv = gram_dom
            .inverse()
            .ok_or_else(|| Error::DegenerateForm("adjoint".into()))?;
        Ok(inv.mul(&f.dagger()).mul(gram_cod))
    }

    /// Bubble-pop coefficient: Y^dag Y = B Id_c. Real for real alpha.
    pub fn bubble_pop(&self, a: Label, b: Label, c: Label) -> Result<f64> {
        if let Some(&v) = self.bubble_cache.borrow().get(&(a, b, c)) {
            return Ok(v);
        }
        let y = self.y_symbol(a, b, c)?;
        let g_c = self.gram_simple(c);
        let g_ab = self.gram_pair(a, b)?;
        let ydag = self.adjoint(&y.mat, &g_c, &g_ab)?;
        let m = ydag.mul(&y.mat);
        let v = m[(0, 0)];
        let dev = m.sub(&CMat::identity(m.rows).scale(v)).max_norm();
        let key = format!(
            "B[{},{};{}]",
            a.render(self.alpha),
            b.render(self.alpha),
            c.render(self.alpha)
        );
        if dev > 1e-9 * v.norm().max(1.0) {
            return Err(Error::NonScalarBubble(key, dev));
        }
        if v.im.abs() > 1e-9 * v.norm().max(1.0) {
            return Err(Error::NonScalarBubble(key, v.im.abs()));
        }
        self.bubble_cache.borrow_mut().insert((a, b, c), v.re);
        Ok(v.re)
    }

    /// Modified dimension of a projective label (neglectons only here).
    pub fn modified_dimension(&self, l: Label) -> Result<f64> {
        match l {
            Label::V(_) => Ok(self.rd.modified_dimension(self.alpha_of(l))),
            _ => Err(Error::UnsupportedTrace(l.render(self.alpha))),
        }
    }

    /// Modified trace of an endomorphism of the neglecton V: d(V) <f>.
    pub fn modified_trace(&self, l: Label, f: &CMat) -> Result<C64> {
        let d = self.modified_dimension(l)?;
        let m = self.module(l);
        let scalar = f[(0, 0)];
        let dev = f.sub(&CMat::identity(m.dim).scale(scalar)).max_norm();
        if dev > 1e-8 * f.max_norm().max(1.0) {
            return Err(Error::UnsupportedTrace(format!(
                "non-scalar endomorphism of {} (dev {dev:.2e})",
                l.render(self.alpha)
            )));
        }
        Ok(scalar * d)
    }

    /// Right partial trace over the last factor of a chain v x factors:
    /// (Id x e'_W)(f x Id)(Id x i_W), i.e. a q-weighted partial trace with
    /// K^{1-r} inserted on the traced factor.
    pub fn partial_trace_right(&self, f: &CMat, last: &WeightModule) -> CMat {
        let n = f.rows / last.dim;
        let mut out = CMat::zeros(n, n);
        let r = self.rd.r as f64;
        for u in 0..n {
            for up in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for (w, &lam) in last.weights.iter().enumerate() {
                    acc += self.rd.qpow((1.0 - r) * lam) * f[(u * last.dim + w, up * last.dim + w)];
                }
                out[(u, up)] = acc;
            }
        }
        out
    }

    /// Modified trace of an endomorphism of V_alpha x S-chain, reduced factor
    /// by factor with the partial-trace axiom t_{U x W}(f) = t_U(ptr_R f).
    pub fn modified_trace_chain(&self, labels: &[Label], f: &CMat) -> Result<C64> {
        assert!(labels[0].is_neglecton());
        let mut cur = f.clone();
        for &l in labels.iter().skip(1).rev() {
            cur = self.partial_trace_right(&cur, &self.module(l));
        }
        self.modified_trace(labels[0], &cur)
    }

    /// Norm of a left-hanging fusion tree over (root, legs...) with internal
    /// labels `internal` (the fast bubble-product path):
    /// product of B^{e_{k-1} leg_k}_{e_k} times d(root).
    pub fn tree_norm(&self, root: Label, legs: &[Label], internal: &[Label]) -> Result<f64> {
        assert_eq!(legs.len(), internal.len());
        let mut prev = root;
        let mut acc = 1.0;
        for (leg, &cur) in legs.iter().zip(internal) {
            acc *= self.bubble_pop(prev, *leg, cur)?;
            prev = cur;
        }
        Ok(acc * self.modified_dimension(root)?)
    }
}
