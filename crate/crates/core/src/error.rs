use thiserror::Error;

/// Errors raised by the core library.
///
/// Validation failures (bad levels, bad knot descriptors, parity violations)
/// are separated from computational failures so that callers such as the CLI
/// can map them onto distinct exit statuses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("level r must be odd and at least 3, got {0}")]
    InvalidLevel(i64),

    #[error("working precision must be at least 53 bits, got {0}")]
    InvalidPrecision(u32),

    #[error("loop value is only defined for n >= 1, got {0}")]
    NonPositiveColor(i64),

    #[error("color {color} outside [1, {max}]")]
    ColorOutOfRange { color: i64, max: usize },

    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("q must be positive, got {0}")]
    NonPositiveQ(i64),

    #[error("p must be odd, got {0}")]
    EvenP(i64),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid knot spec `{input}`: {reason}")]
    KnotSpec { input: String, reason: String },

    #[error("invalid range: r_min = {r_min}, r_max = {r_max}")]
    InvalidRange { r_min: i64, r_max: i64 },

    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate:e})")]
    NoConvergence { iterations: usize, estimate: f64 },

    #[error("non-finite value encountered during {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Whether this error is a validation (usage) failure rather than a
    /// failure of a numerical computation.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::NoConvergence { .. } | Error::Overflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
