//! Finite-dimensional real nonassociative algebras given by structure constants.
//!
//! The crate is organized around a single carrier type, [`Algebra`], which
//! stores a rank-3 structure-constant tensor together with basis labels and a
//! numerical tolerance. Everything else is built on top of it:
//!
//! * [`algebra`] — arithmetic, multiplication operators, identity checks,
//!   units, generated subalgebras, J-invertibility, quadratic structure.
//! * [`constructions`] — canonical algebras (R, C, *C, H, O), mutations,
//!   Cayley-Dickson doubling and its five-parameter generalization, vector
//!   isotopes, quadratic assembly and the parametric eight-dimensional
//!   families.
//! * [`division`] — closed-form division criteria for the parametric
//!   families and a certificate-producing numeric zero-divisor prober.
//! * [`lie`] — derivation Lie algebras, their classification, natural
//!   extensions, module decompositions, reflections and the stabilized
//!   quaternion-subalgebra test.
//! * [`classify`] — isomorphism invariants, polar canonicalization of
//!   octonion isotopes, witness verification and the reduction of an
//!   eight-dimensional noncommutative Jordan division algebra to its
//!   sixteen-parameter table.
//!
//! All randomized routines take an explicit 64-bit seed and are fully
//! deterministic; results do not depend on thread count or platform.

pub mod algebra;
pub mod classify;
pub mod constructions;
pub mod division;
pub mod lie;

mod linalg;
mod rng;

pub use algebra::{Algebra, Element, ExtractedQuadratic, Identity, IdentityReport, LinearMap};
pub use classify::InvariantVector;
pub use constructions::{GcdParams, QuadraticStructure, Table1Params};
pub use division::DivisionVerdict;
pub use lie::DerivationAlgebra;

use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown identity name `{0}`")]
    UnknownIdentity(String),
    #[error("algebra has no two-sided unit")]
    NotUnital,
    #[error("algebra is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("linear map is singular (condition test failed)")]
    SingularMap,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default arithmetic tolerance used by every residual test.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default seed for all sampled checks.
pub const DEFAULT_SEED: u64 = 42;
