//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or combining quotients.
///
/// Precondition violations carry the measured residual alongside the
/// tolerance that was applied, so callers (and the CLI) can report how
/// far the input was from admissible.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matrix: {reason}")]
    InvalidMatrix { reason: String },

    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    #[error("iterative factorization failed to converge")]
    ConvergenceFailure,

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e}, floor {floor:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64, floor: f64 },

    #[error("range inclusion violated: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    RangeInclusionViolated { residual: f64, tolerance: f64 },

    #[error(
        "kernel inclusion violated: residual {residual:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    KernelInclusionViolated { residual: f64, tolerance: f64 },

    #[error("vector outside the quotient domain: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    OutOfDomain { residual: f64, tolerance: f64 },

    #[error("numerator and denominator do not have equal ranges")]
    RangesNotEqual,

    #[error("numerator and denominator do not have equal kernels")]
    KernelsNotEqual,

    #[error("quotients do not share a denominator")]
    DenominatorMismatch,

    #[error("invalid product witness: compatibility residual {compatibility:.3e}, kernel-condition residual {kernel:.3e}")]
    InvalidWitness { compatibility: f64, kernel: f64 },

    #[error("reverse-order condition violated: projector distance {projector_distance:.3e}")]
    ReverseOrderConditionViolated { projector_distance: f64 },

    #[error("simplification condition violated: projector distance {projector_distance:.3e}")]
    SimplificationConditionViolated { projector_distance: f64 },

    #[error("invalid instance spec: {reason}")]
    InvalidSpec { reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for precondition/domain violations,
    /// 3 for parse and I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 3,
            _ => 2,
        }
    }
}
