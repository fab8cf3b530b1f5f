//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid module label: {0}")]
    InvalidLabel(String),
    #[error("unsupported fusion {0}: decomposition leaves the simple sector (projective remainder)")]
    UnsupportedFusion(String),
    #[error("no highest-weight vector found for channel {0}")]
    NoHighestWeight(String),
    #[error("ambiguous channel: highest-weight space for {0} has dimension {1}")]
    AmbiguousChannel(String, usize),
    #[error("singular linear system while solving {0}")]
    SingularSystem(String),
    #[error("braiding does not act by a scalar on {0} (residual {1:.3e})")]
    InconsistentScalar(String, f64),
    #[error("twist on {0} deviates from a scalar by {1:.3e}")]
    NonScalarTwist(String, f64),
    #[error("bubble on {0} deviates from a scalar by {1:.3e}")]
    NonScalarBubble(String, f64),
    #[error("degenerate Hermitian form on {0}")]
    DegenerateForm(String),
    #[error("unsupported decomposition: {0}")]
    UnsupportedDecomposition(String),
    #[error("modified trace is only defined on projective modules, got {0}")]
    UnsupportedTrace(String),
    #[error("Jucys-Murphy operator J_{0} deviates from diagonal by {1:.3e}")]
    NonDiagonalJM(usize, f64),
    #[error("off-diagonal magnitude {0} >= 1; recursion precondition violated")]
    OffDiagTooLarge(f64),
    #[error("no sign change of the step-1 off-diagonal in bracket ({0}, {1})")]
    NoRootInBracket(f64, f64),
    #[error("gate leaks out of the computational block (leakage {0:.3e} > {1:.3e})")]
    LeakyGate(f64, f64),
    #[error("alternative encoding supports one qubit only, got n = {0}")]
    UnsupportedN(usize),
    #[error("invalid braid word: {0}")]
    InvalidWord(String),
    #[error("recursion did not converge within {0} steps (off-diagonal {1:.3e})")]
    NoConvergence(usize, f64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
