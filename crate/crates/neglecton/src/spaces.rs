//! Encoded qubit spaces: the left-hanging fusion-tree bases of
//! H_n = Hom(alpha, alpha x 1^{2n}), their Gram data, braid-generator and
//! Jucys-Murphy matrices, the affine braid-word evaluator, and the
//! three-dimensional alternative encoding H'_1.

use crate::braid::braiding;
use crate::error::{Error, Result};
use crate::fusion::Theory;
use crate::label::Label;
use crate::linalg::{sqrt_real, CMat};
use num_complex::Complex64 as C64;

/// A left-hanging fusion tree over (alpha, 1, ..., 1): the sequence of
/// internal edge labels as integer shifts from alpha. Length 2n, consecutive
/// steps +-1, final shift 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionTree {
    pub shifts: Vec<i32>,
}

impl FusionTree {
    pub fn is_computational(&self) -> bool {
        self.shifts.iter().skip(1).step_by(2).all(|&s| s == 0)
    }

    /// Qubit bitstring for computational trees: shift +1 -> 0, -1 -> 1.
    pub fn bits(&self) -> Option<Vec<u8>> {
        if !self.is_computational() {
            return None;
        }
        Some(
            self.shifts
                .iter()
                .step_by(2)
                .map(|&s| if s > 0 { 0u8 } else { 1u8 })
                .collect(),
        )
    }

    pub fn labels(&self) -> Vec<Label> {
        self.shifts.iter().map(|&s| Label::V(s)).collect()
    }

    pub fn render(&self, alpha: f64) -> String {
        let parts: Vec<String> = self
            .shifts
            .iter()
            .map(|&s| format!("{}", alpha + s as f64))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// Which encoding a Hilbert space carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    /// H_n = Hom(alpha, alpha x 1^{2n}).
    Main,
    /// H'_1 = Hom(alpha+1, 1 x 1 x 1 x alpha).
    Alt,
}

/// An encoded space: ordered tree basis, Gram diagonal, and signature.
#[derive(Debug, Clone)]
pub struct HilbertSpace {
    pub n: usize,
    pub alpha: f64,
    pub encoding: Encoding,
    pub basis: Vec<FusionTree>,
    /// Tree norms <v|v> (real, nonzero at guarded alpha).
    pub gram: Vec<f64>,
    /// Signature D = sign(<v|v>).
    pub signature: Vec<i8>,
}

impl HilbertSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn computational_dim(&self) -> usize {
        self.basis.iter().filter(|t| t.is_computational()).count()
    }

    /// Indices of the computational trees (they come first by construction).
    pub fn computational_indices(&self) -> Vec<usize> {
        (0..self.computational_dim()).collect()
    }

    /// Normalization M = diag(sqrt <v|v>), principal branch.
    pub fn normalizer(&self) -> CMat {
        CMat::diag(&self.gram.iter().map(|&g| sqrt_real(g)).collect::<Vec<_>>())
    }

    /// Express an operator in the normalized basis: M b M^{-1}.
    pub fn normalize(&self, mat: &CMat) -> CMat {
        let m = self.normalizer();
        let minv = m.inverse().expect("nonzero tree norms");
        m.mul(mat).mul(&minv)
    }

    /// Indefinite-unitarity residual of the (normalized) matrix:
    /// max-norm of U^H D U - D with D the signature.
    pub fn indefinite_unitarity_residual(&self, normalized: &CMat) -> f64 {
        let d = CMat::diag(
            &self.signature.iter().map(|&s| C64::new(s as f64, 0.0)).collect::<Vec<_>>(),
        );
        normalized.dagger().mul(&d).mul(normalized).sub(&d).max_norm()
    }

    /// Leakage of a normalized matrix: the largest magnitude in the
    /// computational -> noncomputational block.
    pub fn leakage(&self, normalized: &CMat) -> f64 {
        let k = self.computational_dim();
        let mut m: f64 = 0.0;
        for i in k..self.dim() {
            for j in 0..k {
                m = m.max(normalized[(i, j)].norm());
            }
        }
        m
    }
}

/// Enumerate the H_n basis: computational trees first in binary order
/// |0..0> .. |1..1>, then noncomputational trees in descending lexicographic
/// order of their label sequences.
pub fn enumerate_trees(n: usize) -> Vec<FusionTree> {
    let mut all = Vec::new();
    let steps = 2 * n;
    let mut stack: Vec<(Vec<i32>, i32)> = vec![(Vec::new(), 0)];
    while let Some((prefix, cur)) = stack.pop() {
        if prefix.len() == steps {
            if cur == 0 {
                all.push(FusionTree { shifts: prefix });
            }
            continue;
        }
        let remaining = (steps - prefix.len()) as i32;
        for d in [1, -1] {
            let next = cur + d;
            if next.abs() < remaining {
                let mut p = prefix.clone();
                p.push(next);
                stack.push((p, next));
            }
        }
    }
    let mut comp: Vec<FusionTree> = all.iter().filter(|t| t.is_computational()).cloned().collect();
    comp.sort_by_key(|t| t.bits().unwrap());
    let mut nc: Vec<FusionTree> = all.into_iter().filter(|t| !t.is_computational()).collect();
    nc.sort_by(|x, y| y.shifts.cmp(&x.shifts));
    comp.into_iter().chain(nc).collect()
}

/// Path-enumeration oracle for dim H_n = C(2n, n): count +-1 walks from 0 to 0.
pub fn path_count_oracle(n: usize) -> usize {
    let steps = 2 * n;
    let mut counts = std::collections::HashMap::new();
    counts.insert(0i32, 1usize);
    for _ in 0..steps {
        let mut next = std::collections::HashMap::new();
        for (&pos, &c) in &counts {
            *next.entry(pos + 1).or_insert(0) += c;
            *next.entry(pos - 1).or_insert(0) += c;
        }
        counts = next;
    }
    counts.get(&0).copied().unwrap_or(0)
}

/// Build H_n with Gram data from the bubble products times d_alpha.
pub fn build_space(theory: &Theory, n: usize) -> Result<HilbertSpace> {
    let basis = enumerate_trees(n);
    let d_alpha = theory.modified_dimension(Label::V(0))?;
    let mut gram = Vec::with_capacity(basis.len());
    for t in &basis {
        let mut prev = Label::V(0);
        let mut acc = 1.0;
        for &s in &t.shifts {
            acc *= theory.bubble_pop(prev, Label::S(1), Label::V(s))?;
            prev = Label::V(s);
        }
        gram.push(acc * d_alpha);
    }
    let signature = gram.iter().map(|&g| if g >= 0.0 { 1i8 } else { -1i8 }).collect();
    Ok(HilbertSpace { n, alpha: theory.alpha, encoding: Encoding::Main, basis, gram, signature })
}

/// Matrix of the elementary braid b_i (2 <= i <= 2n) on the tree basis via
/// the local F-conjugated R-action on edge e_{i-1}.
pub fn generator_matrix(theory: &Theory, space: &HilbertSpace, i: usize) -> Result<CMat> {
    assert_eq!(space.encoding, Encoding::Main);
    if i < 2 || i > 2 * space.n {
        return Err(Error::InvalidWord(format!(
            "elementary braid index {i} out of range 2..={}",
            2 * space.n
        )));
    }
    let dim = space.dim();
    let mut out = CMat::zeros(dim, dim);
    let one = Label::S(1);
    let edge = |t: &FusionTree, k: usize| -> Label {
        if k == 0 {
            Label::V(0)
        } else {
            Label::V(t.shifts[k - 1])
        }
    };
    for (j, t) in space.basis.iter().enumerate() {
        let em2 = edge(t, i - 2);
        let ei = edge(t, i);
        let em1 = edge(t, i - 1);
        let f = theory.f_symbol(em2, one, one, ei)?;
        let finv = f
            .mat
            .inverse()
            .ok_or_else(|| Error::SingularSystem("local F move".into()))?;
        let mut rdiag = Vec::new();
        for &nlab in &f.rows {
            rdiag.push(theory.r_symbol(one, one, nlab)?);
        }
        let local = finv.mul(&CMat::diag(&rdiag)).mul(&f.mat);
        let col = f
            .cols
            .iter()
            .position(|&m| m == em1)
            .expect("current edge label is a valid channel");
        for (row, &m) in f.cols.iter().enumerate() {
            let Label::V(ms) = m else { unreachable!("internal edges are neglectons") };
            let mut shifted = t.clone();
            shifted.shifts[i - 2] = ms;
            let jj = space
                .basis
                .iter()
                .position(|u| *u == shifted)
                .expect("shifted tree stays in the basis");
            out[(jj, j)] += local[(row, col)];
        }
    }
    Ok(out)
}

/// The squared flagpole braid J_1 = b_1^2: diagonal with eigenvalue
/// R^{alpha,1}_{v_1} R^{1,alpha}_{v_1} (the double-braid eigenvalue).
pub fn j1_matrix(theory: &Theory, space: &HilbertSpace) -> Result<CMat> {
    assert_eq!(space.encoding, Encoding::Main);
    let mut diag = Vec::with_capacity(space.dim());
    for t in &space.basis {
        let v1 = Label::V(t.shifts[0]);
        diag.push(theory.double_braid_eigenvalue(Label::V(0), Label::S(1), v1)?);
    }
    Ok(CMat::diag(&diag))
}

/// Jucys-Murphy operator J_i = b_i ... b_2 b_1^2 b_2 ... b_i on H_n.
/// Even-index J's are checked to be diagonal on the tree basis.
pub fn jucys_murphy(theory: &Theory, space: &HilbertSpace, i: usize) -> Result<CMat> {
    let mut m = j1_matrix(theory, space)?;
    for k in 2..=i {
        let b = generator_matrix(theory, space, k)?;
        m = b.mul(&m).mul(&b);
    }
    if i >= 2 && i.is_multiple_of(2) {
        let off = m.off_diagonal_norm();
        if off > 1e-8 {
            return Err(Error::NonDiagonalJM(i, off));
        }
    }
    Ok(m)
}

/// A word in the affine braid group: (generator index, exponent) pairs.
/// Index 1 is the flagpole braid and admits even exponents only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord(pub Vec<(usize, i64)>);

impl BraidWord {
    /// Parse words like "1^2 3 2^-1".
    pub fn parse(s: &str) -> Result<BraidWord> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (idx, exp) = match tok.split_once('^') {
                Some((i, e)) => (
                    i.parse::<usize>()
                        .map_err(|_| Error::InvalidWord(format!("bad index in '{tok}'")))?,
                    e.parse::<i64>()
                        .map_err(|_| Error::InvalidWord(format!("bad exponent in '{tok}'")))?,
                ),
                None => (
                    tok.parse::<usize>()
                        .map_err(|_| Error::InvalidWord(format!("bad token '{tok}'")))?,
                    1,
                ),
            };
            if idx == 0 {
                return Err(Error::InvalidWord("generator indices start at 1".into()));
            }
            if idx == 1 && exp.rem_euclid(2) != 0 {
                return Err(Error::InvalidWord(
                    "odd powers of generator 1 are not in the affine braid group".into(),
                ));
            }
            out.push((idx, exp));
        }
        Ok(BraidWord(out))
    }

    /// Total letter count (b_1^2 counts as one affine generator application).
    pub fn letter_count(&self) -> usize {
        self.0
            .iter()
            .map(|&(i, e)| {
                if i == 1 {
                    (e.unsigned_abs() / 2) as usize
                } else {
                    e.unsigned_abs() as usize
                }
            })
            .sum()
    }
}

/// Evaluate a braid word on H_n (unnormalized tree basis).
pub fn braid_word_matrix(
    theory: &Theory,
    space: &HilbertSpace,
    word: &BraidWord,
) -> Result<CMat> {
    let dim = space.dim();
    let mut acc = CMat::identity(dim);
    for &(idx, exp) in &word.0 {
        let base = if idx == 1 {
            j1_matrix(theory, space)?
        } else {
            generator_matrix(theory, space, idx)?
        };
        let reps = if idx == 1 { exp / 2 } else { exp };
        let powed = if reps >= 0 {
            base.pow(reps as u32)
        } else {
            base.inverse()
                .ok_or_else(|| Error::SingularSystem("braid generator inverse".into()))?
                .pow((-reps) as u32)
        };
        acc = powed.mul(&acc);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Full-module oracle: realize trees as explicit morphisms and braid honestly.
// ---------------------------------------------------------------------------

/// Tree basis vector as an explicit module morphism
/// V_alpha -> V_alpha x S1^{x 2n}, built left to right.
pub fn tree_morphism(theory: &Theory, tree: &FusionTree) -> Result<CMat> {
    let mut acc = CMat::identity(theory.rd.r as usize);
    let mut prev = Label::V(0);
    for &s in &tree.shifts {
        let y = theory.y_symbol(prev, Label::S(1), Label::V(s))?;
        acc = acc.kron(&CMat::identity(2)).mul(&y.mat);
        prev = Label::V(s);
    }
    Ok(acc)
}

/// Matrix of the braid b_i computed on the full module V_alpha x S1^{2n}
/// (i = 1 gives the double braid of the first two factors), expanded back in
/// the tree basis by least squares. Test oracle for the local assembly.
pub fn full_module_braid(theory: &Theory, space: &HilbertSpace, i: usize) -> Result<CMat> {
    let n2 = 2 * space.n;
    let va = theory.module(Label::V(0));
    let s1 = theory.module(Label::S(1));
    let big = if i == 1 {
        let c1 = braiding(&va, &s1);
        let c2 = braiding(&s1, &va);
        let wrap = c2.mul(&c1);
        wrap.kron(&CMat::identity(1 << (n2 - 1)))
    } else {
        let pre = va.dim * (1 << (i - 2));
        let post = 1 << (n2 - i);
        let c = braiding(&s1, &s1);
        CMat::identity(pre).kron(&c).kron(&CMat::identity(post))
    };
    let trees: Vec<CMat> = space
        .basis
        .iter()
        .map(|t| tree_morphism(theory, t))
        .collect::<Result<_>>()?;
    let design = CMat::from_columns(&trees.iter().map(|t| t.vectorize()).collect::<Vec<_>>());
    let mut out = CMat::zeros(space.dim(), space.dim());
    for (j, t) in trees.iter().enumerate() {
        let target = big.mul(t).vectorize();
        let (sol, res) = design.lstsq(&target);
        if res > 1e-8 {
            return Err(Error::SingularSystem(format!(
                "full-module braid expansion residual {res:.2e}"
            )));
        }
        for (r, v) in sol.into_iter().enumerate() {
            out[(r, j)] = v;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Alternative encoding H'_1 = Hom(alpha+1, 1 x 1 x 1 x alpha)
// ---------------------------------------------------------------------------

/// The alternative one-qubit encoding: basis trees (v1, v1') in
/// {(0,1), (2,1), (2,3)}; the first two span the computational space.
/// The (2,1) basis vector carries a fixed sign so that the braid generators
/// restrict to the standard Ising matrices on the computational block.
#[derive(Debug, Clone)]
pub struct AltSpace {
    pub alpha: f64,
    /// (v1, v1') channel pairs of the A-side trees ((11)_{v1} 1)_{v1'} alpha.
    pub basis: Vec<(u8, u8)>,
    /// (v1, u) channel pairs of the B-side trees ((11)_{v1} alpha)_u 1.
    pub basis_b: Vec<(u8, i32)>,
    pub gram: Vec<f64>,
    pub gram_b: Vec<f64>,
    pub signature: Vec<i8>,
    /// b_1 on normalized A-basis (diagonal).
    pub b1: CMat,
    /// b_2 on normalized A-basis.
    pub b2: CMat,
    /// Crossing of the third Ising leg with alpha, normalized A -> B.
    pub b3: CMat,
    /// Full wrap of the third Ising leg around alpha (endomorphism of A).
    pub pole_wrap: CMat,
    /// Full twist of the three Ising strands, (b1 b2 b1)^2 (diagonal).
    pub full_twist3: CMat,
}

pub fn build_alt_space(theory: &Theory, n: usize) -> Result<AltSpace> {
    if n != 1 {
        return Err(Error::UnsupportedN(n));
    }
    use Label::{S, V};
    let basis: Vec<(u8, u8)> = vec![(0, 1), (2, 1), (2, 3)];
    let basis_b: Vec<(u8, i32)> = vec![(0, 0), (2, 0), (2, 2)];
    let d_root = theory.modified_dimension(V(1))?;
    // A-side tree morphisms: V_{a+1} -> ((1 x 1) x 1) x alpha
    let i2 = CMat::identity(2);
    let i4 = CMat::identity(4);
    let mut trees_a = Vec::new();
    let mut gram_a = Vec::new();
    for &(v1, v1p) in &basis {
        let y1 = theory.y_symbol(S(1), S(1), S(v1))?;
        let y2 = theory.y_symbol(S(v1), S(1), S(v1p))?;
        let y3 = theory.y_symbol(S(v1p), V(0), V(1))?;
        let t = y1.mat.kron(&i2).mul(&y2.mat).kron(&i4).mul(&y3.mat);
        trees_a.push(t);
        let b = theory.bubble_pop(S(1), S(1), S(v1))?
            * theory.bubble_pop(S(v1), S(1), S(v1p))?
            * theory.bubble_pop(S(v1p), V(0), V(1))?;
        gram_a.push(b * d_root);
    }
    // basis-sign gauge: flip (2,1) so the computational block matches the
    // standard Ising gate matrices (a pure phase convention on the basis)
    trees_a[1] = trees_a[1].scale(C64::new(-1.0, 0.0));
    let mut trees_b = Vec::new();
    let mut gram_b = Vec::new();
    for &(v1, u) in &basis_b {
        let y1 = theory.y_symbol(S(1), S(1), S(v1))?;
        let y2 = theory.y_symbol(S(v1), V(0), V(u))?;
        let y3 = theory.y_symbol(V(u), S(1), V(1))?;
        let t = y1.mat.kron(&i4).mul(&y2.mat).kron(&i2).mul(&y3.mat);
        trees_b.push(t);
        let b = theory.bubble_pop(S(1), S(1), S(v1))?
            * theory.bubble_pop(S(v1), V(0), V(u))?
            * theory.bubble_pop(V(u), S(1), V(1))?;
        gram_b.push(b * d_root);
    }
    let design_a =
        CMat::from_columns(&trees_a.iter().map(|t| t.vectorize()).collect::<Vec<_>>());
    let design_b =
        CMat::from_columns(&trees_b.iter().map(|t| t.vectorize()).collect::<Vec<_>>());
    let expand = |design: &CMat, target: &CMat| -> Result<Vec<C64>> {
        let (sol, res) = design.lstsq(&target.vectorize());
        if res > 1e-8 {
            return Err(Error::SingularSystem(format!(
                "alt-encoding expansion residual {res:.2e}"
            )));
        }
        Ok(sol)
    };
    let s1 = theory.module(S(1));
    let va = theory.module(V(0));
    let c11 = braiding(&s1, &s1);
    let c1a = braiding(&s1, &va);
    let ca1 = braiding(&va, &s1);
    let b1_big = c11.kron(&i2).kron(&i4);
    let b2_big = i2.kron(&c11).kron(&i4);
    let b3_big = i2.kron(&i2).kron(&c1a);
    let b3r_big = i2.kron(&i2).kron(&ca1);
    let to_matrix = |big: &CMat, src: &[CMat], design: &CMat| -> Result<CMat> {
        let mut m = CMat::zeros(3, 3);
        for (j, t) in src.iter().enumerate() {
            let sol = expand(design, &big.mul(t))?;
            for (i, v) in sol.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    };
    let b1_raw = to_matrix(&b1_big, &trees_a, &design_a)?;
    let b2_raw = to_matrix(&b2_big, &trees_a, &design_a)?;
    let b3_raw = to_matrix(&b3_big, &trees_a, &design_b)?;
    let b3r_raw = to_matrix(&b3r_big, &trees_b, &design_a)?;
    let ma = CMat::diag(&gram_a.iter().map(|&g| sqrt_real(g)).collect::<Vec<_>>());
    let mb = CMat::diag(&gram_b.iter().map(|&g| sqrt_real(g)).collect::<Vec<_>>());
    let mai = ma.inverse().expect("nonzero norms");
    let b1 = ma.mul(&b1_raw).mul(&mai);
    let b2 = ma.mul(&b2_raw).mul(&mai);
    let b3 = mb.mul(&b3_raw).mul(&mai);
    let pole_wrap = ma.mul(&b3r_raw.mul(&b3_raw)).mul(&mai);
    let prod = b1.mul(&b2).mul(&b1);
    let full_twist3 = prod.mul(&prod);
    let signature = gram_a.iter().map(|&g| if g >= 0.0 { 1i8 } else { -1 }).collect();
    Ok(AltSpace {
        alpha: theory.alpha,
        basis,
        basis_b,
        gram: gram_a,
        gram_b,
        signature,
        b1,
        b2,
        b3,
        pole_wrap,
        full_twist3,
    })
}
