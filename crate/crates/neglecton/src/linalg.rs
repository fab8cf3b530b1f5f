//! Small dense complex matrices and the factorizations the solvers need.
//!
//! Everything in this crate stays below 64x64, so the implementations favor
//! robustness over asymptotics: partial-pivot LU for inverses, Householder QR
//! for least squares, and a one-sided Jacobi SVD for nullspaces.

use num_complex::Complex64 as C64;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C64>,
}

impl std::fmt::Debug for CMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMat::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn from_columns(cols: &[Vec<C64>]) -> Self {
        let rows = cols[0].len();
        let mut m = CMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_column(j, c);
        }
        m
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = ZERO;
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, c: C64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Kronecker product, lexicographic index order (self-major).
    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> CMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = CMat::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    pub fn off_diagonal_max(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self[(i, j)].norm());
                }
            }
        }
        m
    }

    /// Submatrix selected by row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> CMat {
        CMat::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Matrix inverse by partial-pivot LU.
    pub fn inverse(&self) -> Option<CMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm();
            for r in col + 1..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-300 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    let t = a[(col, j)];
                    a[(col, j)] = a[(piv, j)];
                    a[(piv, j)] = t;
                    let t = inv[(col, j)];
                    inv[(col, j)] = inv[(piv, j)];
                    inv[(piv, j)] = t;
                }
            }
            let d = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= d;
                inv[(col, j)] /= d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let u = a[(col, j)];
                    let v = inv[(col, j)];
                    a[(r, j)] -= f * u;
                    inv[(r, j)] -= f * v;
                }
            }
        }
        Some(inv)
    }

    /// Least-squares solution of `self * x = b` via Householder QR.
    /// Returns (x, residual norm). Requires rows >= cols.
    pub fn lstsq(&self, b: &[C64]) -> (Vec<C64>, f64) {
        assert!(self.rows >= self.cols);
        assert_eq!(b.len(), self.rows);
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            // Householder reflector for column k
            let mut norm_x = 0.0;
            for i in k..m {
                norm_x += a[(i, k)].norm_sqr();
            }
            let norm_x = norm_x.sqrt();
            if norm_x < 1e-300 {
                continue;
            }
            let akk = a[(k, k)];
            let phase = if akk.norm() > 1e-300 { akk / akk.norm() } else { ONE };
            let alpha = -phase * norm_x;
            let mut v: Vec<C64> = (k..m).map(|i| a[(i, k)]).collect();
            v[0] -= alpha;
            let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if vnorm2 < 1e-300 {
                continue;
            }
            // apply H = I - 2 v v^H / |v|^2 to remaining columns and rhs
            for j in k..n {
                let mut dot = ZERO;
                for (idx, i) in (k..m).enumerate() {
                    dot += v[idx].conj() * a[(i, j)];
                }
                let f = dot * 2.0 / vnorm2;
                for (idx, i) in (k..m).enumerate() {
                    let d = f * v[idx];
                    a[(i, j)] -= d;
                }
            }
            let mut dot = ZERO;
            for (idx, i) in (k..m).enumerate() {
                dot += v[idx].conj() * rhs[i];
            }
            let f = dot * 2.0 / vnorm2;
            for (idx, i) in (k..m).enumerate() {
                rhs[i] -= f * v[idx];
            }
        }
        // back substitution on the upper-triangular part
        let mut x = vec![ZERO; n];
        for k in (0..n).rev() {
            let mut acc = rhs[k];
            for j in k + 1..n {
                acc -= a[(k, j)] * x[j];
            }
            let d = a[(k, k)];
            x[k] = if d.norm() > 1e-300 { acc / d } else { ZERO };
        }
        let resid: f64 = (n..m).map(|i| rhs[i].norm_sqr()).sum::<f64>().sqrt();
        (x, resid)
    }

    /// One-sided Jacobi SVD. Returns (singular values descending, V) with
    /// `self ~ U S V^H`; only the right singular vectors are accumulated.
    pub fn svd_values_and_v(&self) -> (Vec<f64>, CMat) {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut v = CMat::identity(n);
        let eps = 1e-30;
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    let mut hpp = 0.0;
                    let mut hqq = 0.0;
                    let mut hpq = ZERO;
                    for i in 0..m {
                        hpp += a[(i, p)].norm_sqr();
                        hqq += a[(i, q)].norm_sqr();
                        hpq += a[(i, p)].conj() * a[(i, q)];
                    }
                    let scale = (hpp * hqq).sqrt().max(1e-300);
                    off = off.max(hpq.norm() / scale);
                    if hpq.norm() <= eps * scale {
                        continue;
                    }
                    // 2x2 Hermitian eigenproblem [[hpp, hpq],[hpq*, hqq]]
                    let phi = hpq / hpq.norm();
                    let tau = (hqq - hpp) / (2.0 * hpq.norm());
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    // rotate columns p, q of a and v
                    for i in 0..m {
                        let ap = a[(i, p)];
                        let aq = a[(i, q)];
                        a[(i, p)] = ap * c - aq * phi.conj() * s;
                        a[(i, q)] = ap * phi * s + aq * c;
                    }
                    for i in 0..n {
                        let vp = v[(i, p)];
                        let vq = v[(i, q)];
                        v[(i, p)] = vp * c - vq * phi.conj() * s;
                        v[(i, q)] = vp * phi * s + vq * c;
                    }
                }
            }
            if off < 1e-15 {
                break;
            }
        }
        let mut sv: Vec<(f64, usize)> = (0..n)
            .map(|j| {
                let s: f64 = (0..m).map(|i| a[(i, j)].norm_sqr()).sum();
                (s.sqrt(), j)
            })
            .collect();
        sv.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
        let perm: Vec<usize> = sv.iter().map(|&(_, j)| j).collect();
        let vals: Vec<f64> = sv.iter().map(|&(s, _)| s).collect();
        let vperm = CMat::from_fn(n, n, |i, j| v[(i, perm[j])]);
        (vals, vperm)
    }

    /// Nullspace basis: columns of V whose singular values fall below
    /// `rel_tol * sigma_max`.
    pub fn nullspace(&self, rel_tol: f64) -> Vec<Vec<C64>> {
        let (vals, v) = self.svd_values_and_v();
        let smax = vals.first().copied().unwrap_or(0.0).max(1e-300);
        let mut out = Vec::new();
        for (j, &s) in vals.iter().enumerate() {
            if s < rel_tol * smax {
                out.push(v.column(j));
            }
        }
        out
    }

    /// Smallest and largest singular values.
    pub fn singular_extremes(&self) -> (f64, f64) {
        let (vals, _) = self.svd_values_and_v();
        let max = vals.first().copied().unwrap_or(0.0);
        let min = vals.last().copied().unwrap_or(0.0);
        (min, max)
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.cols);
        let mut out = CMat::zeros(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out[(i + self.rows, j)] = other[(i, j)];
            }
        }
        out
    }

    /// Flatten to a single column vector (row-major).
    pub fn vectorize(&self) -> Vec<C64> {
        self.data.clone()
    }
}

/// Principal-branch complex square root of a real number: sqrt(-x) = i sqrt(x).
pub fn sqrt_real(x: f64) -> C64 {
    if x >= 0.0 {
        C64::new(x.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-x).sqrt())
    }
}
