//! Closed-form evaluators for every printed F-, R-, and bubble-pop symbol,
//! plus the sign functions s_alpha and t_alpha, and the solver-vs-closed-form
//! comparison report.

use crate::error::{Error, Result};
use crate::fusion::Theory;
use crate::label::Label;
use crate::linalg::CMat;
use crate::root::RootData;
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

/// Sign function s_alpha: +1 on (0,1) u (5,8) mod 8, -1 on (1,5) mod 8.
pub fn s_alpha(alpha: f64) -> Result<f64> {
    let m = alpha.rem_euclid(8.0);
    if (m - m.round()).abs() < 1e-9 {
        return Err(Error::InvalidLabel(format!("s_alpha undefined at integer alpha = {alpha}")));
    }
    Ok(if (0.0..1.0).contains(&m) || m > 5.0 { 1.0 } else { -1.0 })
}

/// Sign function t_alpha: +1 on (0,1) u (2,4) mod 4, -1 on (1,2) mod 4.
pub fn t_alpha(alpha: f64) -> Result<f64> {
    let m = alpha.rem_euclid(4.0);
    if (m - m.round()).abs() < 1e-9 {
        return Err(Error::InvalidLabel(format!("t_alpha undefined at integer alpha = {alpha}")));
    }
    Ok(if (0.0..1.0).contains(&m) || m > 2.0 { 1.0 } else { -1.0 })
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// A symbol key (a, b; c); neglecton labels carry shifts from the running alpha.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TripleKey {
    pub a: Label,
    pub b: Label,
    pub c: Label,
}

impl TripleKey {
    pub fn new(a: Label, b: Label, c: Label) -> Self {
        TripleKey { a, b, c }
    }

    pub fn render(&self, alpha: f64) -> String {
        format!(
            "({},{};{})",
            self.a.render(alpha),
            self.b.render(alpha),
            self.c.render(alpha)
        )
    }
}

/// All R-symbol keys the printed table covers.
pub fn r_table_keys() -> Vec<TripleKey> {
    use Label::*;
    vec![
        TripleKey::new(V(0), S(2), V(2)),
        TripleKey::new(S(2), V(0), V(2)),
        TripleKey::new(V(0), S(1), V(1)),
        TripleKey::new(S(1), V(0), V(1)),
        TripleKey::new(V(0), S(2), V(0)),
        TripleKey::new(S(2), V(0), V(0)),
        TripleKey::new(V(0), S(1), V(-1)),
        TripleKey::new(S(1), V(0), V(-1)),
        TripleKey::new(V(0), S(2), V(-2)),
        TripleKey::new(S(2), V(0), V(-2)),
        TripleKey::new(S(2), S(1), S(3)),
        TripleKey::new(S(1), S(2), S(3)),
        TripleKey::new(S(2), S(1), S(1)),
        TripleKey::new(S(1), S(2), S(1)),
        TripleKey::new(S(1), S(1), S(2)),
        TripleKey::new(S(1), S(1), S(0)),
    ]
}

/// Closed-form R-symbol from the printed table.
pub fn closed_form_r(key: TripleKey, alpha: f64, rd: RootData) -> Result<C64> {
    use Label::*;
    let s = || s_alpha(alpha);
    let t = || t_alpha(alpha);
    let q = |x: f64| rd.qpow(x);
    let v = match (key.a, key.b, key.c) {
        (V(0), S(2), V(2)) | (S(2), V(0), V(2)) => q(3.0 + alpha),
        (V(0), S(1), V(1)) | (S(1), V(0), V(1)) => q((3.0 + alpha) / 2.0),
        (V(0), S(2), V(0)) => s()? * q(1.0 - alpha),
        (S(2), V(0), V(0)) => s()? * q(3.0 + alpha),
        (V(0), S(1), V(-1)) => s()? * q(-(1.0 + 3.0 * alpha) / 2.0),
        (S(1), V(0), V(-1)) => s()? * q((7.0 + alpha) / 2.0),
        (V(0), S(2), V(-2)) => t()? * q(1.0 - 3.0 * alpha),
        (S(2), V(0), V(-2)) => t()? * q(5.0 + alpha),
        (S(2), S(1), S(3)) | (S(1), S(2), S(3)) => q(1.0),
        (S(2), S(1), S(1)) => q(1.0),
        (S(1), S(2), S(1)) => q(3.0),
        (S(1), S(1), S(2)) => q(0.5),
        (S(1), S(1), S(0)) => q(2.5),
        _ => return Err(Error::InvalidLabel(format!("no closed-form R for {key:?}"))),
    };
    Ok(v)
}

/// The traditional Ising closed formula
/// `R^{ab}_c = (-1)^{(a+b-c)/2} (i e^{i pi/8})^{-(a(a+2)+b(b+2)-c(c+2))/2}`
/// for a, b, c in {0, 1, 2}.
pub fn ising_closed_form_r(a: u32, b: u32, c: u32) -> C64 {
    let sgn = if ((a + b - c) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let base_arg = PI / 2.0 + PI / 8.0; // arg(i e^{i pi/8})
    let expo = -((a * (a + 2) + b * (b + 2)) as f64 - (c * (c + 2)) as f64) / 2.0;
    C64::from_polar(1.0, base_arg * expo) * sgn
}

/// All bubble-pop keys the printed list covers.
pub fn bubble_table_keys() -> Vec<TripleKey> {
    use Label::*;
    vec![
        TripleKey::new(V(0), S(0), V(0)),
        TripleKey::new(V(0), S(1), V(1)),
        TripleKey::new(V(0), S(2), V(2)),
        TripleKey::new(S(1), S(1), S(2)),
        TripleKey::new(S(2), S(1), S(3)),
        TripleKey::new(S(1), S(2), S(3)),
        TripleKey::new(S(1), S(1), S(0)),
        TripleKey::new(S(2), S(1), S(1)),
        TripleKey::new(S(1), S(2), S(1)),
        TripleKey::new(V(0), S(1), V(-1)),
        TripleKey::new(V(2), S(2), V(0)),
        TripleKey::new(V(0), S(2), V(0)),
        TripleKey::new(V(0), S(3), V(1)),
        TripleKey::new(V(0), S(3), V(-1)),
    ]
}

/// Closed-form bubble-pop coefficient from the printed list. The printed
/// "B^{11}_1" is read as B^{11}_0 (1 is not a channel of 1 x 1), and
/// B^{21}_1 is the reciprocal of -sqrt(2) as printed.
pub fn closed_form_bubble(key: TripleKey, alpha: f64) -> Result<f64> {
    use Label::*;
    let a = alpha;
    let v = match (key.a, key.b, key.c) {
        (V(0), S(0), V(0)) => 1.0,
        (V(0), S(1), V(1)) => 1.0,
        (V(0), S(2), V(2)) => 1.0,
        (S(1), S(1), S(2)) => 1.0,
        (S(2), S(1), S(3)) => 1.0,
        (S(1), S(2), S(3)) => 1.0,
        (S(1), S(1), S(0)) => -2f64.sqrt(),
        (S(2), S(1), S(1)) => -1.0 / 2f64.sqrt(),
        (S(1), S(2), S(1)) => -2f64.sqrt(),
        (V(0), S(1), V(-1)) => 2f64.sqrt() / (-1.0 + cot(PI * a / 4.0)),
        (V(2), S(2), V(0)) => 2.0 * cot(PI * a / 4.0),
        (V(0), S(2), V(0)) => 2f64.sqrt() * (PI * a / 2.0).cos() / (1.0 - (PI * a / 2.0).sin()),
        (V(0), S(3), V(1)) => 2f64.sqrt() / (1.0 - (PI * a / 4.0).tan()),
        (V(0), S(3), V(-1)) => (2.0 + 2.0 * (PI * a / 4.0).tan()) / (-1.0 + cot(PI * a / 4.0)),
        _ => return Err(Error::InvalidLabel(format!("no closed-form bubble for {key:?}"))),
    };
    Ok(v)
}

/// F-symbol key (a, b, c; d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FKey {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub d: Label,
}

impl FKey {
    pub fn render(&self, alpha: f64) -> String {
        format!(
            "[{} {} {}; {}]",
            self.a.render(alpha),
            self.b.render(alpha),
            self.c.render(alpha),
            self.d.render(alpha)
        )
    }
}

pub fn f_table_keys() -> Vec<FKey> {
    use Label::*;
    vec![
        FKey { a: V(0), b: S(1), c: S(1), d: V(0) },
        FKey { a: V(0), b: S(2), c: S(1), d: V(1) },
        FKey { a: V(0), b: S(2), c: S(1), d: V(-1) },
        FKey { a: V(0), b: S(1), c: S(2), d: V(1) },
        FKey { a: V(0), b: S(1), c: S(2), d: V(-1) },
        FKey { a: S(1), b: S(1), c: S(1), d: S(1) },
    ]
}

/// A closed-form F-matrix together with its printed row and column labels.
pub struct ClosedFormF {
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub mat: CMat,
}

/// Printed F-matrices from the appendix list, in their printed index order.
pub fn closed_form_f(key: FKey, alpha: f64, rd: RootData) -> Result<ClosedFormF> {
    use Label::*;
    let q = rd.q();
    let q2 = rd.qpow(2.0);
    let q2a = rd.qpow(2.0 * alpha);
    let one = C64::new(1.0, 0.0);
    let sqrt2 = C64::new(2f64.sqrt(), 0.0);
    let m2 = |e: [[C64; 2]; 2], scale: C64| {
        CMat::from_fn(2, 2, |i, j| e[i][j] * scale)
    };
    let out = match (key.a, key.b, key.c, key.d) {
        (V(0), S(1), S(1), V(0)) => ClosedFormF {
            rows: vec![S(0), S(2)],
            cols: vec![V(1), V(-1)],
            mat: m2(
                [[q * (q2a + q2), -(q2a - one)], [q2a - q2, q * (q2a - one)]],
                (sqrt2 * (q2a - one)).inv(),
            ),
        },
        (V(0), S(2), S(1), V(1)) => ClosedFormF {
            rows: vec![S(1), S(3)],
            cols: vec![V(0), V(2)],
            mat: m2(
                [
                    [(q2 - one) * (q2a + q2), (q2 + one) * (q2a + one)],
                    [(q2 + one) * (q2a + q2), q2a - q2],
                ],
                (q2a + q2).inv(),
            ),
        },
        (V(0), S(2), S(1), V(-1)) => ClosedFormF {
            rows: vec![S(1), S(3)],
            cols: vec![V(0), V(-2)],
            mat: m2(
                [
                    [(q2 + one) * (q2a + q2), (q2a - q2) * -2.0],
                    [q2a + one, q2 * (q2a - q2)],
                ],
                (q2a - q2).inv(),
            ),
        },
        (V(0), S(1), S(2), V(1)) => ClosedFormF {
            rows: vec![S(1), S(3)],
            cols: vec![V(1), V(-1)],
            mat: m2(
                [
                    [q2 * (q2a + one), -q * (q2a - one)],
                    [sqrt2 * (q2a - q2), q2 * (q2a - one)],
                ],
                (q2a - one).inv(),
            ),
        },
        (V(0), S(1), S(2), V(-1)) => ClosedFormF {
            rows: vec![S(1), S(3)],
            cols: vec![V(1), V(-1)],
            mat: m2(
                [
                    [q * (q2 + one) * (q2a + q2), -(q2a - one)],
                    [q2a + one, q * (q2a - one)],
                ],
                (q2a - one).inv(),
            ),
        },
        (S(1), S(1), S(1), S(1)) => ClosedFormF {
            rows: vec![S(0), S(2)],
            cols: vec![S(0), S(2)],
            mat: m2([[one, one], [one, -one]], sqrt2.inv()),
        },
        _ => return Err(Error::InvalidLabel(format!("no closed-form F for {key:?}"))),
    };
    Ok(out)
}

/// How a solver F-matrix relates to the printed one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GaugeClass {
    /// Elementwise equal.
    Exact,
    /// Equal after rescaling columns by constants (ratio std-dev below tol).
    ColumnGauge,
    /// Equal after rescaling rows and columns (printed in a different vertex
    /// gauge; the traditional Ising F^{111}_1 is the one such case).
    BiGauge,
    /// No consistent gauge found.
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct FComparison {
    pub key: String,
    pub class: GaugeClass,
    /// Max elementwise deviation without rescaling.
    pub exact_residual: f64,
    /// Max elementwise deviation after the best per-column rescaling.
    pub column_gauge_residual: f64,
    /// Max deviation after the best row+column rescaling.
    pub bi_gauge_residual: f64,
    /// Per-column solver/printed ratio standard deviations.
    pub column_ratio_stddev: Vec<f64>,
}

/// Compare a solver F-matrix against the printed form, permuting the printed
/// rows/columns into the solver's canonical order first.
pub fn compare_f(theory: &Theory, key: FKey) -> Result<FComparison> {
    let solver = theory.f_symbol(key.a, key.b, key.c, key.d)?;
    let printed = closed_form_f(key, theory.alpha, theory.rd)?;
    let rperm: Vec<usize> = solver
        .rows
        .iter()
        .map(|l| printed.rows.iter().position(|p| p == l).expect("row label"))
        .collect();
    let cperm: Vec<usize> = solver
        .cols
        .iter()
        .map(|l| printed.cols.iter().position(|p| p == l).expect("col label"))
        .collect();
    let p = CMat::from_fn(solver.rows.len(), solver.cols.len(), |i, j| {
        printed.mat[(rperm[i], cperm[j])]
    });
    let s = &solver.mat;
    let exact = s.sub(&p).max_norm();
    let mut col_dev = 0.0f64;
    let mut stds = Vec::new();
    for j in 0..s.cols {
        let mut ratios = Vec::new();
        for i in 0..s.rows {
            if p[(i, j)].norm() > 1e-12 {
                ratios.push(s[(i, j)] / p[(i, j)]);
            }
        }
        let mean = ratios.iter().sum::<C64>() / ratios.len() as f64;
        let var =
            ratios.iter().map(|r| (r - mean).norm_sqr()).sum::<f64>() / ratios.len() as f64;
        stds.push(var.sqrt());
        for i in 0..s.rows {
            col_dev = col_dev.max((s[(i, j)] - p[(i, j)] * mean).norm());
        }
    }
    let mut bi_dev = 0.0f64;
    {
        let mut row_scale = vec![C64::new(1.0, 0.0); s.rows];
        for i in 0..s.rows {
            if p[(i, 0)].norm() > 1e-12 {
                row_scale[i] = s[(i, 0)] / p[(i, 0)];
            }
        }
        for j in 0..s.cols {
            let mut num = C64::new(0.0, 0.0);
            let mut den = 0.0;
            for i in 0..s.rows {
                let pij = p[(i, j)] * row_scale[i];
                num += pij.conj() * s[(i, j)];
                den += pij.norm_sqr();
            }
            let cscale = if den > 1e-300 { num / den } else { C64::new(1.0, 0.0) };
            for i in 0..s.rows {
                bi_dev = bi_dev.max((s[(i, j)] - p[(i, j)] * row_scale[i] * cscale).norm());
            }
        }
    }
    let scale = s.max_norm().max(1.0);
    let class = if exact < 1e-8 * scale {
        GaugeClass::Exact
    } else if col_dev < 1e-8 * scale {
        GaugeClass::ColumnGauge
    } else if bi_dev < 1e-8 * scale {
        GaugeClass::BiGauge
    } else {
        GaugeClass::Mismatch
    };
    Ok(FComparison {
        key: key.render(theory.alpha),
        class,
        exact_residual: exact,
        column_gauge_residual: col_dev,
        bi_gauge_residual: bi_dev,
        column_ratio_stddev: stds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarComparison {
    pub key: String,
    pub solver: [f64; 2],
    pub closed_form: [f64; 2],
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub alpha: f64,
    pub r_symbols: Vec<ScalarComparison>,
    pub bubbles: Vec<ScalarComparison>,
    pub f_symbols: Vec<FComparison>,
    pub max_r_deviation: f64,
    pub max_bubble_deviation: f64,
}

/// Run the full solver-vs-closed-form comparison at the theory's alpha.
pub fn compare_tables(theory: &Theory) -> Result<TableReport> {
    let mut r_rows = Vec::new();
    let mut max_r: f64 = 0.0;
    for key in r_table_keys() {
        let solver = theory.r_symbol(key.a, key.b, key.c)?;
        let cf = closed_form_r(key, theory.alpha, theory.rd)?;
        let dev = (solver - cf).norm() / cf.norm().max(1e-30);
        max_r = max_r.max(dev);
        r_rows.push(ScalarComparison {
            key: format!("R{}", key.render(theory.alpha)),
            solver: [solver.re, solver.im],
            closed_form: [cf.re, cf.im],
            deviation: dev,
        });
    }
    let mut b_rows = Vec::new();
    let mut max_b: f64 = 0.0;
    for key in bubble_table_keys() {
        let solver = theory.bubble_pop(key.a, key.b, key.c)?;
        let cf = closed_form_bubble(key, theory.alpha)?;
        let dev = (solver - cf).abs() / cf.abs().max(1e-30);
        max_b = max_b.max(dev);
        b_rows.push(ScalarComparison {
            key: format!("B{}", key.render(theory.alpha)),
            solver: [solver, 0.0],
            closed_form: [cf, 0.0],
            deviation: dev,
        });
    }
    let mut f_rows = Vec::new();
    for key in f_table_keys() {
        f_rows.push(compare_f(theory, key)?);
    }
    Ok(TableReport {
        alpha: theory.alpha,
        r_symbols: r_rows,
        bubbles: b_rows,
        f_symbols: f_rows,
        max_r_deviation: max_r,
        max_bubble_deviation: max_b,
    })
}
