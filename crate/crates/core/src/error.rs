use crate::ComplexValue;

/// Errors raised by the numerical kernels.
///
/// Every variant carries enough context for the caller to print the
/// violated precondition verbatim.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("pole at z = {}{:+}i", .0.re, .0.im)]
    Pole(ComplexValue),
    #[error("validity window violated: |Im z| = {im} exceeds 2*pi*n/C = {bound} for n = {n}")]
    Validity { im: f64, n: u64, bound: f64 },
    #[error("asymptotic expansion started diverging before target accuracy; best achieved bound {best_bound:e}")]
    PrecisionNotReached { best_bound: f64 },
    #[error("degenerate ratio: denominator modulus {0:e} is below the underflow guard")]
    DegenerateRatio(f64),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
