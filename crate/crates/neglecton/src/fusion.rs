//! Fusion channels, splitting vertices, F-symbols, and R-symbols for the
//! r = 4 non-semisimple Ising theory at a fixed neglecton parameter alpha.

use crate::braid::braiding;
use crate::error::{Error, Result};
use crate::label::{check_alpha, Label};
use crate::linalg::CMat;
use crate::module::{
    intertwiner_residual, make_neglecton, make_onedim, make_simple, tensor, WeightModule,
};
use crate::root::RootData;
use num_complex::Complex64 as C64;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

/// Relative singular-value cutoff for nullspace extraction.
pub const NULLSPACE_TOL: f64 = 1e-9;

type FKey4 = (Label, Label, Label, Label);

/// Fusion channels of a pair, with a flag for a projective remainder that the
/// simple sector does not see (for example 2 x 2 = 0 + xi).
#[derive(Debug, Clone)]
pub struct FusionChannelSet {
    pub pair: (Label, Label),
    /// Simple channels in descending highest weight.
    pub channels: Vec<Label>,
    /// True when the full decomposition also contains a projective cover P_i.
    pub projective_remainder: bool,
}

/// A splitting vertex Y^{ab}_c : c -> a x b with lexicographic normalization.
#[derive(Debug, Clone)]
pub struct YSymbol {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    /// dim(a x b) x dim(c) matrix.
    pub mat: CMat,
    pub equivariance_residual: f64,
}

/// An F-symbol: left-tree_m = sum_n [F]_{n m} right-tree_n.
#[derive(Debug, Clone)]
pub struct FSymbol {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub d: Label,
    /// Right-internal channels (row labels).
    pub rows: Vec<Label>,
    /// Left-internal channels (column labels).
    pub cols: Vec<Label>,
    pub mat: CMat,
    pub residual: f64,
}

/// Evaluation context: the root data, the neglecton base parameter, and memo
/// tables for modules and solved symbols.
///
/// Caches live in `RefCell`s; a `Theory` is confined to one evaluation thread
/// (construct one per worker when fanning out over alpha).
pub struct Theory {
    pub rd: RootData,
    pub alpha: f64,
    modules: RefCell<HashMap<Label, Rc<WeightModule>>>,
    products: RefCell<HashMap<(Label, Label), Rc<WeightModule>>>,
    y_cache: RefCell<HashMap<(Label, Label, Label), Rc<YSymbol>>>,
    f_cache: RefCell<HashMap<FKey4, Rc<FSymbol>>>,
    r_cache: RefCell<HashMap<(Label, Label, Label), C64>>,
    pub(crate) bubble_cache: RefCell<HashMap<(Label, Label, Label), f64>>,
    pub(crate) gram_cache: RefCell<HashMap<Label, Rc<CMat>>>,
    pub(crate) gram_pair_cache: RefCell<HashMap<(Label, Label), Rc<CMat>>>,
}

impl Theory {
    pub fn new(alpha: f64, rd: RootData) -> Result<Self> {
        check_alpha(alpha, rd.r)?;
        Ok(Theory {
            rd,
            alpha,
            modules: RefCell::new(HashMap::new()),
            products: RefCell::new(HashMap::new()),
            y_cache: RefCell::new(HashMap::new()),
            f_cache: RefCell::new(HashMap::new()),
            r_cache: RefCell::new(HashMap::new()),
            bubble_cache: RefCell::new(HashMap::new()),
            gram_cache: RefCell::new(HashMap::new()),
            gram_pair_cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn ising(alpha: f64) -> Result<Self> {
        Theory::new(alpha, RootData::default())
    }

    /// Numeric value of a neglecton label's parameter.
    pub fn alpha_of(&self, l: Label) -> f64 {
        match l {
            Label::V(k) => self.alpha + k as f64,
            _ => panic!("alpha_of on non-neglecton label"),
        }
    }

    pub fn top_weight(&self, l: Label) -> f64 {
        l.top_weight(self.alpha, self.rd.r)
    }

    pub fn module(&self, l: Label) -> Rc<WeightModule> {
        if let Some(m) = self.modules.borrow().get(&l) {
            return m.clone();
        }
        let m = Rc::new(match l {
            Label::S(n) => make_simple(n as u32, self.rd).expect("valid simple label"),
            Label::V(k) => make_neglecton(self.alpha + k as f64, self.rd)
                .expect("guarded neglecton label"),
            Label::C(k) => make_onedim(k, self.rd),
        });
        self.modules.borrow_mut().insert(l, m.clone());
        m
    }

    pub fn product(&self, a: Label, b: Label) -> Rc<WeightModule> {
        if let Some(m) = self.products.borrow().get(&(a, b)) {
            return m.clone();
        }
        let m = Rc::new(tensor(&self.module(a), &self.module(b)));
        self.products.borrow_mut().insert((a, b), m.clone());
        m
    }

    /// Fusion rules of the supported pairs (Table of the r = 4 theory).
    pub fn fusion_channels(&self, a: Label, b: Label) -> Result<FusionChannelSet> {
        use Label::*;
        let mk = |channels: Vec<Label>, projective: bool| {
            Ok(FusionChannelSet { pair: (a, b), channels, projective_remainder: projective })
        };
        match (a, b) {
            (S(0), x) => mk(vec![x], false),
            (x, S(0)) => mk(vec![x], false),
            (S(1), S(1)) => mk(vec![S(2), S(0)], false),
            (S(1), S(2)) | (S(2), S(1)) => mk(vec![S(3), S(1)], false),
            (S(2), S(2)) => mk(vec![S(0)], true), // 0 + xi
            (S(1), S(3)) | (S(3), S(1)) => mk(vec![], true), // xi only
            (V(k), S(s)) | (S(s), V(k)) if s <= 3 => {
                let s = s as i32;
                let channels = (0..=s).map(|j| V(k + s - 2 * j)).collect();
                mk(channels, false)
            }
            _ => Err(Error::UnsupportedFusion(format!(
                "{} x {}",
                a.render(self.alpha),
                b.render(self.alpha)
            ))),
        }
    }

    /// Channel list in the order used to index symbol matrices: simples
    /// ascending by weight (0, 2), neglecton channels descending
    /// (alpha+1, alpha-1), matching the conventions the printed data uses.
    pub fn channel_order(&self, channels: &[Label]) -> Vec<Label> {
        let mut out = channels.to_vec();
        if out.iter().all(|l| l.is_simple()) {
            out.sort_by(|x, y| {
                self.top_weight(*x).partial_cmp(&self.top_weight(*y)).unwrap()
            });
        } else {
            out.sort_by(|x, y| {
                self.top_weight(*y).partial_cmp(&self.top_weight(*x)).unwrap()
            });
        }
        out
    }

    /// The splitting vertex Y^{ab}_c. The image of c's highest-weight vector
    /// is the E-nullspace vector in the weight-lambda_c eigenspace of a x b,
    /// scaled so its first nonzero coefficient (lexicographic order) is 1;
    /// the remaining columns are generated by the coproduct F.
    pub fn y_symbol(&self, a: Label, b: Label, c: Label) -> Result<Rc<YSymbol>> {
        if let Some(y) = self.y_cache.borrow().get(&(a, b, c)) {
            return Ok(y.clone());
        }
        let prod = self.product(a, b);
        let cm = self.module(c);
        let lam = self.top_weight(c);
        let stacked = prod.e.vstack(&prod.h().sub(&CMat::identity(prod.dim).scale(
            C64::new(lam, 0.0),
        )));
        let ns = stacked.nullspace(NULLSPACE_TOL);
        let key = format!(
            "Y[{},{};{}]",
            a.render(self.alpha),
            b.render(self.alpha),
            c.render(self.alpha)
        );
        if ns.is_empty() {
            return Err(Error::NoHighestWeight(key));
        }
        if ns.len() > 1 {
            return Err(Error::AmbiguousChannel(key, ns.len()));
        }
        let mut v = ns.into_iter().next().unwrap();
        let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let first = v
            .iter()
            .position(|z| z.norm() > 1e-9 * vmax)
            .expect("nonzero nullspace vector");
        let scale = v[first].inv();
        for z in v.iter_mut() {
            *z *= scale;
        }
        let mut cols = vec![v];
        for _ in 1..cm.dim {
            let next = prod.f.matvec(cols.last().unwrap());
            cols.push(next);
        }
        let mat = CMat::from_columns(&cols);
        let res = intertwiner_residual(&mat, &cm, &prod);
        let y = Rc::new(YSymbol { a, b, c, mat, equivariance_residual: res });
        self.y_cache.borrow_mut().insert((a, b, c), y.clone());
        Ok(y)
    }

    /// Left channels m in ch(a,b) with d in ch(m,c), in matrix order.
    pub fn left_channels(&self, a: Label, b: Label, c: Label, d: Label) -> Result<Vec<Label>> {
        let mut out = Vec::new();
        for m in self.fusion_channels(a, b)?.channels {
            if let Ok(set) = self.fusion_channels(m, c) {
                if set.channels.contains(&d) {
                    out.push(m);
                }
            }
        }
        Ok(self.channel_order(&out))
    }

    /// Right channels n in ch(b,c) with d in ch(a,n), in matrix order.
    pub fn right_channels(&self, a: Label, b: Label, c: Label, d: Label) -> Result<Vec<Label>> {
        let mut out = Vec::new();
        for n in self.fusion_channels(b, c)?.channels {
            if let Ok(set) = self.fusion_channels(a, n) {
                if set.channels.contains(&d) {
                    out.push(n);
                }
            }
        }
        Ok(self.channel_order(&out))
    }

    /// Solve [F^{abc}_d] column by column from the morphism identity
    /// (Y^{ab}_m x 1) Y^{mc}_d = sum_n [F]_{nm} (1 x Y^{bc}_n) Y^{an}_d
    /// over the whole module d (least squares, residual recorded).
    pub fn f_symbol(&self, a: Label, b: Label, c: Label, d: Label) -> Result<Rc<FSymbol>> {
        if let Some(f) = self.f_cache.borrow().get(&(a, b, c, d)) {
            return Ok(f.clone());
        }
        let cols = self.left_channels(a, b, c, d)?;
        let rows = self.right_channels(a, b, c, d)?;
        let key = format!(
            "F[{} {} {}; {}]",
            a.render(self.alpha),
            b.render(self.alpha),
            c.render(self.alpha),
            d.render(self.alpha)
        );
        if cols.is_empty() || rows.is_empty() {
            return Err(Error::SingularSystem(format!("{key}: no channels")));
        }
        let ia = CMat::identity(self.module(a).dim);
        let ic = CMat::identity(self.module(c).dim);
        let mut rights = Vec::new();
        for &n in &rows {
            let y1 = self.y_symbol(b, c, n)?;
            let y2 = self.y_symbol(a, n, d)?;
            rights.push(ia.kron(&y1.mat).mul(&y2.mat).vectorize());
        }
        let design = CMat::from_columns(&rights);
        let mut mat = CMat::zeros(rows.len(), cols.len());
        let mut residual = 0.0f64;
        for (j, &m) in cols.iter().enumerate() {
            let y1 = self.y_symbol(a, b, m)?;
            let y2 = self.y_symbol(m, c, d)?;
            let left = y1.mat.kron(&ic).mul(&y2.mat).vectorize();
            let (sol, res) = design.lstsq(&left);
            residual = residual.max(res);
            for (i, s) in sol.into_iter().enumerate() {
                mat[(i, j)] = s;
            }
        }
        if residual > 1e-8 {
            return Err(Error::SingularSystem(format!("{key}: residual {residual:.3e}")));
        }
        let f = Rc::new(FSymbol { a, b, c, d, rows, cols, mat, residual });
        self.f_cache.borrow_mut().insert((a, b, c, d), f.clone());
        Ok(f)
    }

    /// Scalar by which braiding acts on a splitting vertex in the raw
    /// lexicographic gauge: c_{ab} Y^{ab}_c = lambda Y^{ba}_c.
    pub fn r_scalar_lex(&self, a: Label, b: Label, c: Label) -> Result<C64> {
        let ya = self.y_symbol(a, b, c)?;
        let yb = self.y_symbol(b, a, c)?;
        let lhs = braiding(&self.module(a), &self.module(b)).mul(&ya.mat);
        // ratio at the entry of largest modulus in Y^{ba}_c
        let mut best = (0usize, 0usize);
        let mut bm = 0.0;
        for i in 0..yb.mat.rows {
            for j in 0..yb.mat.cols {
                let v = yb.mat[(i, j)].norm();
                if v > bm {
                    bm = v;
                    best = (i, j);
                }
            }
        }
        let lambda = lhs[best] / yb.mat[best];
        let dev = lhs.sub(&yb.mat.scale(lambda)).max_norm();
        if dev > 1e-9 * lhs.max_norm().max(1.0) {
            return Err(Error::InconsistentScalar(
                format!(
                    "c[{},{}] on Y_{}",
                    a.render(self.alpha),
                    b.render(self.alpha),
                    c.render(self.alpha)
                ),
                dev,
            ));
        }
        Ok(lambda)
    }

    /// The R-symbol R^{ab}_c in the convention of the printed tables: the
    /// scalar of the braiding on bubble-normalized vertices,
    /// c_{ba} (Y^{ba}_c / sqrt(B^{ba}_c)) = R^{ab}_c (Y^{ab}_c / sqrt(B^{ab}_c)),
    /// with the principal square-root branch.
    pub fn r_symbol(&self, a: Label, b: Label, c: Label) -> Result<C64> {
        if let Some(&r) = self.r_cache.borrow().get(&(a, b, c)) {
            return Ok(r);
        }
        let lam = self.r_scalar_lex(b, a, c)?;
        let bab = self.bubble_pop(a, b, c)?;
        let bba = self.bubble_pop(b, a, c)?;
        let r = lam * crate::linalg::sqrt_real(bab) / crate::linalg::sqrt_real(bba);
        self.r_cache.borrow_mut().insert((a, b, c), r);
        Ok(r)
    }

    /// Eigenvalue of the full double braid c_{ba} c_{ab} on the channel-c
    /// image inside a x b. Gauge invariant; equals R^{ab}_c R^{ba}_c.
    pub fn double_braid_eigenvalue(&self, a: Label, b: Label, c: Label) -> Result<C64> {
        let ya = self.y_symbol(a, b, c)?;
        let ma = self.module(a);
        let mb = self.module(b);
        let lhs = braiding(&mb, &ma).mul(&braiding(&ma, &mb)).mul(&ya.mat);
        let mut best = (0usize, 0usize);
        let mut bm = 0.0;
        for i in 0..ya.mat.rows {
            for j in 0..ya.mat.cols {
                let v = ya.mat[(i, j)].norm();
                if v > bm {
                    bm = v;
                    best = (i, j);
                }
            }
        }
        let lambda = lhs[best] / ya.mat[best];
        let dev = lhs.sub(&ya.mat.scale(lambda)).max_norm();
        if dev > 1e-8 {
            return Err(Error::InconsistentScalar("double braid".into(), dev));
        }
        Ok(lambda)
    }

    /// Pentagon residual for leaves (a,b,c,d) with root e: the two F-move
    /// paths from the fully-left tree to the fully-right tree must agree.
    /// Returns None when some intermediate fusion leaves the simple sector.
    pub fn pentagon_residual(
        &self,
        a: Label,
        b: Label,
        c: Label,
        d: Label,
        e: Label,
    ) -> Result<Option<f64>> {
        // Basis of the left-associated tree space: pairs (m, l) with
        // m in ch(a,b), l in ch(m,c), e in ch(l,d).
        let mut t1 = Vec::new(); // ((ab)_m c)_l d)_e
        for m in self.channel_order(&self.try_channels(a, b)?) {
            for l in self.channel_order(&self.try_channels_opt(m, c)?) {
                if self.try_channels_opt(l, d)?.contains(&e) {
                    t1.push((m, l));
                }
            }
        }
        let mut t2 = Vec::new(); // (a (bc)_t)_l d)_e
        for t in self.channel_order(&self.try_channels(b, c)?) {
            for l in self.channel_order(&self.try_channels_opt(a, t)?) {
                if self.try_channels_opt(l, d)?.contains(&e) {
                    t2.push((t, l));
                }
            }
        }
        let mut t3 = Vec::new(); // a ((bc)_t d)_r )_e
        for t in self.channel_order(&self.try_channels(b, c)?) {
            for r in self.channel_order(&self.try_channels_opt(t, d)?) {
                if self.try_channels_opt(a, r)?.contains(&e) {
                    t3.push((t, r));
                }
            }
        }
        let mut t4 = Vec::new(); // a (b (cd)_s)_r )_e
        for s in self.channel_order(&self.try_channels(c, d)?) {
            for r in self.channel_order(&self.try_channels_opt(b, s)?) {
                if self.try_channels_opt(a, r)?.contains(&e) {
                    t4.push((s, r));
                }
            }
        }
        let mut t5 = Vec::new(); // ((ab)_m (cd)_s)_e
        for m in self.channel_order(&self.try_channels(a, b)?) {
            for s in self.channel_order(&self.try_channels_opt(c, d)?) {
                if self.try_channels_opt(m, s)?.contains(&e) {
                    t5.push((m, s));
                }
            }
        }
        // Any projective remainder on the way makes the tuple unsupported.
        if self.projective_on_path(a, b, c, d)? {
            return Ok(None);
        }
        if t1.is_empty() || t4.is_empty() {
            return Ok(None);
        }
        // P12 : T1 -> T2, coefficient [F^{abc}_l]_{t m}, diagonal in l.
        let p12 = self.path_matrix(&t1, &t2, |&(m, l), &(t, l2)| {
            if l != l2 {
                return Ok(None);
            }
            let f = self.f_symbol(a, b, c, l)?;
            Ok(entry(&f, t, m))
        })?;
        // P23 : T2 -> T3, coefficient [F^{a t d}_e]_{r l}, diagonal in t.
        let p23 = self.path_matrix(&t2, &t3, |&(t, l), &(t2_, r)| {
            if t != t2_ {
                return Ok(None);
            }
            let f = self.f_symbol(a, t, d, e)?;
            Ok(entry(&f, r, l))
        })?;
        // P34 : T3 -> T4, coefficient [F^{bcd}_r]_{s t}, diagonal in r.
        let p34 = self.path_matrix(&t3, &t4, |&(t, r), &(s, r2)| {
            if r != r2 {
                return Ok(None);
            }
            let f = self.f_symbol(b, c, d, r)?;
            Ok(entry(&f, s, t))
        })?;
        // P15 : T1 -> T5, coefficient [F^{m c d}_e]_{s l}, diagonal in m.
        let p15 = self.path_matrix(&t1, &t5, |&(m, l), &(m2, s)| {
            if m != m2 {
                return Ok(None);
            }
            let f = self.f_symbol(m, c, d, e)?;
            Ok(entry(&f, s, l))
        })?;
        // P54 : T5 -> T4, coefficient [F^{a b s}_e]_{r m}, diagonal in s.
        let p54 = self.path_matrix(&t5, &t4, |&(m, s), &(s2, r)| {
            if s != s2 {
                return Ok(None);
            }
            let f = self.f_symbol(a, b, s, e)?;
            Ok(entry(&f, r, m))
        })?;
        let lhs = p34.mul(&p23).mul(&p12);
        let rhs = p54.mul(&p15);
        Ok(Some(lhs.sub(&rhs).max_norm()))
    }

    fn try_channels(&self, a: Label, b: Label) -> Result<Vec<Label>> {
        Ok(self.fusion_channels(a, b)?.channels)
    }

    /// Channels, or empty when the pair is unsupported (treated as "no path").
    fn try_channels_opt(&self, a: Label, b: Label) -> Result<Vec<Label>> {
        match self.fusion_channels(a, b) {
            Ok(set) => Ok(set.channels),
            Err(Error::UnsupportedFusion(_)) => Ok(vec![]),
            Err(e) => Err(e),
        }
    }

    /// True when any fusion on any of the five trees has a projective remainder.
    fn projective_on_path(&self, a: Label, b: Label, c: Label, d: Label) -> Result<bool> {
        let mut pairs: Vec<(Label, Label)> = vec![(a, b), (b, c), (c, d)];
        for m in self.try_channels_opt(a, b)? {
            pairs.push((m, c));
            for l in self.try_channels_opt(m, c)? {
                pairs.push((l, d));
            }
            for s in self.try_channels_opt(c, d)? {
                pairs.push((m, s));
            }
        }
        for t in self.try_channels_opt(b, c)? {
            pairs.push((a, t));
            pairs.push((t, d));
            for r in self.try_channels_opt(t, d)? {
                pairs.push((a, r));
            }
        }
        for s in self.try_channels_opt(c, d)? {
            pairs.push((b, s));
            for r in self.try_channels_opt(b, s)? {
                pairs.push((a, r));
            }
        }
        for (x, y) in pairs {
            match self.fusion_channels(x, y) {
                Ok(set) if set.projective_remainder => return Ok(true),
                Err(Error::UnsupportedFusion(_)) => return Ok(true),
                Err(e) => return Err(e),
                _ => {}
            }
        }
        Ok(false)
    }

    fn path_matrix<K: PartialEq>(
        &self,
        from: &[K],
        to: &[K],
        mut coeff: impl FnMut(&K, &K) -> Result<Option<C64>>,
    ) -> Result<CMat> {
        let mut m = CMat::zeros(to.len(), from.len());
        for (j, src) in from.iter().enumerate() {
            for (i, dst) in to.iter().enumerate() {
                if let Some(v) = coeff(src, dst)? {
                    m[(i, j)] = v;
                }
            }
        }
        Ok(m)
    }
}

fn entry(f: &FSymbol, row: Label, col: Label) -> Option<C64> {
    let i = f.rows.iter().position(|&x| x == row)?;
    let j = f.cols.iter().position(|&x| x == col)?;
    Some(f.mat[(i, j)])
}
