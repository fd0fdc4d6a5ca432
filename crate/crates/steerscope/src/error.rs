//! Error types shared by every module of the crate.
//!
//! Validation errors always carry the offending magnitude so callers can
//! report which invariant failed and by how much.

use thiserror::Error;

/// Errors produced by state validation, linear algebra and threshold
/// arithmetic.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (max entry deviation {deviation:.3e} > {tolerance:.1e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace is not 1 (got {trace:.17}, deviation {deviation:.3e} > {tolerance:.1e})")]
    InvalidTrace {
        trace: f64,
        deviation: f64,
        tolerance: f64,
    },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eigenvalue:.3e} < -{tolerance:.1e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64, tolerance: f64 },

    #[error(
        "vector is not normalized (norm {norm:.17}, deviation {deviation:.3e} > {tolerance:.1e})"
    )]
    NotNormalized {
        norm: f64,
        deviation: f64,
        tolerance: f64,
    },

    #[error("entries must be finite, found NaN or infinity at flat index {index}")]
    NonFiniteEntry { index: usize },

    #[error("bipartition is not square: dimA {dim_a} != dimB {dim_b}")]
    NonSquareBipartition { dim_a: usize, dim_b: usize },

    #[error("local dimension must be at least 2, got {dim}")]
    InvalidDimension { dim: usize },

    #[error("entanglement fraction must lie in [0, 1], got {fraction}")]
    InvalidFraction { fraction: f64 },

    #[error("Schmidt coefficients must be nonnegative with unit squared sum (sum of squares {sum_sq:.17})")]
    InvalidSchmidtCoefficients { sum_sq: f64 },

    #[error("rank must satisfy 1 <= rank <= {max_rank}, got {rank}")]
    InvalidRank { rank: usize, max_rank: usize },

    #[error("filter precondition violated: witness expectation {expectation:.3e} is not negative")]
    FilterPrecondition { expectation: f64 },

    #[error("filter annihilates the state (post-filter trace {trace:.3e} below {tolerance:.1e})")]
    VanishingFilterNorm { trace: f64, tolerance: f64 },

    #[error("strict comparison undecidable at precision ceiling of {ceiling_digits} digits (margin {margin:.3e} within certified error {error_bound:.3e})")]
    PrecisionExceeded {
        ceiling_digits: u32,
        margin: f64,
        error_bound: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
