//! Numerical construction and verification of the non-semisimple Ising anyon
//! model built from weight representations of the unrolled quantum group at
//! q = exp(i pi / 4).
//!
//! The crate is organized bottom-up:
//! - [`root`], [`linalg`]: the root of unity, quantum numbers, and dense
//!   complex matrix kernels (QR least squares, Jacobi SVD, LU inverse);
//! - [`module`], [`braid`]: weight modules S_n / V_alpha, tensor products,
//!   R-matrix, braiding, twists, duality;
//! - [`fusion`]: fusion channels, splitting vertices Y, F- and R-symbols;
//! - [`hermitian`]: Hermitian forms, adjoints, bubble-pop coefficients,
//!   modified trace and dimensions;
//! - [`tables`]: closed-form symbol evaluators used as oracles against the
//!   solvers;
//! - [`spaces`]: the encoded qubit spaces H_n and the alternative encoding,
//!   braid generator and Jucys-Murphy matrices, normalization, leakage;
//! - [`compile`]: leakage-suppression recursion, decoupling roots,
//!   universality verdicts, entangling certification, Clifford suite;
//! - [`output`]: serializable report structures shared with the CLI.

pub mod braid;
pub mod compile;
pub mod error;
pub mod fusion;
pub mod hermitian;
pub mod label;
pub mod linalg;
pub mod module;
pub mod output;
pub mod root;
pub mod spaces;
pub mod tables;

pub use error::{Error, Result};
pub use fusion::Theory;
pub use label::Label;
pub use root::RootData;
