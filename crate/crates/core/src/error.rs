use thiserror::Error;

/// Errors raised by the coefficient engine and the numeric evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gamma or digamma argument sits on (or within 1e-12 of) a
    /// nonpositive integer.
    #[error("pole: {0}")]
    Pole(String),
    /// `alpha_l` vanished, so `beta_l` cannot be solved for.
    #[error("alpha/beta recurrence degenerates at level {level}: alpha is zero")]
    DegenerateAlpha { level: usize },
    /// A value does not fit the target scalar type.
    #[error("range error: {0}")]
    Range(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
