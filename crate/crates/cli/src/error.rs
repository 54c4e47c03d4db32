//! Process-level error classification.
//!
//! Every failure a command can hit is either the user's input (missing or
//! malformed files, out-of-range parameters) or a numeric breakdown inside
//! an otherwise valid computation (an eigensolver that did not converge, an
//! internal cross-check that missed). The two map to distinct exit codes so
//! scripts can tell them apart; verification mismatches are not errors and
//! carry their own code at the command level.

use effnum_core::Error as CoreError;

/// Exit code for malformed input or out-of-range parameters.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for numeric failures inside a valid computation.
pub const EXIT_NUMERIC: i32 = 3;
/// Exit code for a verification run whose pass/fail pattern deviated from
/// the expected one (or, under `--require-all-pass`, any failed check).
pub const EXIT_MISMATCH: i32 = 1;

/// A command failure with its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The input could not be used as given.
    #[error("{0}")]
    Input(String),
    /// A computation on valid input broke down numerically.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    /// Wraps any displayable cause as an input error.
    pub fn input(cause: impl std::fmt::Display) -> Self {
        Self::Input(cause.to_string())
    }

    /// Wraps any displayable cause as a numeric failure.
    pub fn numeric(cause: impl std::fmt::Display) -> Self {
        Self::Numeric(cause.to_string())
    }

    /// The process exit code this failure maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => EXIT_INPUT,
            Self::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

/// Classifies a core error raised while diagonalizing: convergence failures
/// are numeric, everything else reflects the input matrix.
pub fn eigen_error(e: CoreError) -> CliError {
    match e {
        CoreError::NoConvergence { .. } => CliError::numeric(e),
        _ => CliError::input(e),
    }
}
