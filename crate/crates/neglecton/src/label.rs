//! Anyon labels.
//!
//! Within one theory every neglecton that appears is of the form `V_(alpha + k)`
//! for a fixed real base `alpha` and an integer shift `k`, so labels carry the
//! shift rather than a floating-point weight. That keeps them exactly
//! comparable and hashable across long chains of fusion arithmetic.

use crate::error::{Error, Result};
use serde::Serialize;

/// Guard half-width around integers for the neglecton parameter.
pub const ALPHA_GUARD: f64 = 1e-6;

/// Label of a module in the fixed-alpha theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    /// Simple S_n, 0 <= n <= r-1. S_3 is the zeta anyon at r = 4.
    S(u8),
    /// Neglecton V_(alpha + shift).
    V(i32),
    /// One-dimensional module C^H_{k r}.
    C(i32),
}

impl Label {
    pub fn is_simple(&self) -> bool {
        matches!(self, Label::S(_))
    }

    pub fn is_neglecton(&self) -> bool {
        matches!(self, Label::V(_))
    }

    /// Highest weight of the labeled module given the base alpha (r = 4).
    pub fn top_weight(&self, alpha: f64, r: u32) -> f64 {
        match self {
            Label::S(n) => *n as f64,
            Label::V(k) => alpha + *k as f64 + (r - 1) as f64,
            Label::C(k) => (*k * r as i32) as f64,
        }
    }

    pub fn dim(&self, r: u32) -> usize {
        match self {
            Label::S(n) => *n as usize + 1,
            Label::V(_) => r as usize,
            Label::C(_) => 1,
        }
    }

    /// Render with a concrete alpha, e.g. "S1", "V(2.5)", "C(4)".
    pub fn render(&self, alpha: f64) -> String {
        match self {
            Label::S(n) => format!("S{n}"),
            Label::V(k) => format!("V({})", alpha + *k as f64),
            Label::C(k) => format!("C({})", 4 * k),
        }
    }
}

/// Render a tensor word like "S1*S1*V(2.5)".
pub fn render_product(labels: &[Label], alpha: f64) -> String {
    labels.iter().map(|l| l.render(alpha)).collect::<Vec<_>>().join("*")
}

/// Reject alpha within the guard of an integer, unless alpha = 0 mod r
/// (V_0 = S_{r-1} is legitimate).
pub fn check_alpha(alpha: f64, r: u32) -> Result<()> {
    let nearest = alpha.round();
    if (alpha - nearest).abs() < ALPHA_GUARD {
        let m = nearest.rem_euclid(r as f64);
        if m.abs() > 0.5 && (m - r as f64).abs() > 0.5 {
            return Err(Error::InvalidLabel(format!(
                "alpha = {alpha} is within {ALPHA_GUARD} of the integer {nearest}"
            )));
        }
        if (alpha - nearest).abs() > 0.0 && m.abs() <= 0.5 {
            // exactly representable multiples of r are fine; near-misses are not
            return Err(Error::InvalidLabel(format!(
                "alpha = {alpha} is within {ALPHA_GUARD} of the integer {nearest}"
            )));
        }
        if (alpha - nearest).abs() == 0.0 && m.abs() <= 0.5 {
            return Ok(());
        }
        if (alpha - nearest).abs() == 0.0 {
            return Err(Error::InvalidLabel(format!(
                "alpha = {alpha} is an integer not divisible by r = {r}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_rejects_near_integers() {
        assert!(check_alpha(2.3, 4).is_ok());
        assert!(check_alpha(2.0000001, 4).is_err());
        assert!(check_alpha(3.0, 4).is_err());
        // alpha = 0 mod r allowed (V_0 = S_3)
        assert!(check_alpha(0.0, 4).is_ok());
        assert!(check_alpha(4.0, 4).is_ok());
        assert!(check_alpha(-4.0, 4).is_ok());
    }

    #[test]
    fn rendering() {
        assert_eq!(Label::S(1).render(2.5), "S1");
        assert_eq!(Label::V(0).render(2.5), "V(2.5)");
        assert_eq!(Label::V(-1).render(2.5), "V(1.5)");
        assert_eq!(
            render_product(&[Label::S(1), Label::S(1), Label::V(0)], 2.5),
            "S1*S1*V(2.5)"
        );
    }

    #[test]
    fn ordering_by_top_weight() {
        assert!(Label::V(1).top_weight(2.3, 4) > Label::V(-1).top_weight(2.3, 4));
        assert_eq!(Label::S(3).top_weight(0.0, 4), 3.0);
    }
}
