//! Error type shared across the crate.
//!
//! Validation errors carry the measured violation magnitude so a failing
//! input can be diagnosed (and logged by the fuzz harness) without re-running
//! the check.

use thiserror::Error;

/// Errors raised by validation and construction routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Matrix is not Hermitian: `‖A − A†‖_max` exceeded the tolerance.
    #[error("NotHermitian: max |A - A^dagger| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// Matrix has a negative eigenvalue beyond tolerance.
    #[error("NotPositive: min eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotPositive { min_eigenvalue: f64, tolerance: f64 },

    /// Trace differs from one beyond tolerance.
    #[error("TraceNotOne: trace = {trace} (|trace - 1| = {deviation:e})")]
    TraceNotOne { trace: f64, deviation: f64 },

    /// Operands have incompatible dimensions.
    #[error("DimensionMismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A scalar argument is outside the function's domain.
    #[error("DomainError: {0}")]
    DomainError(&'static str),

    /// A spectral function was applied to an eigenvalue it is undefined for.
    #[error("DomainError: spectral function undefined at eigenvalue {eigenvalue}")]
    SpectralDomain { eigenvalue: f64 },

    /// States were required to commute but do not.
    #[error("NotCommuting: max |[rho0, rho1]| = {commutator_norm:e} exceeds {tolerance:e}")]
    NotCommuting {
        commutator_norm: f64,
        tolerance: f64,
    },

    /// The fidelity-preserving construction failed its post-verification.
    #[error("FidelityNotPreserved: classical fidelity {classical} vs quantum {quantum} (|diff| = {deviation:e})")]
    FidelityNotPreserved {
        classical: f64,
        quantum: f64,
        deviation: f64,
    },

    /// POVM canonicalization received unusable input vectors.
    #[error("DegenerateInput: {0}")]
    DegenerateInput(&'static str),

    /// Matrix entries must be finite.
    #[error("NonFinite: entry at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
