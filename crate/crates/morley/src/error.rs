use thiserror::Error;

/// Crate-wide error type. Every operation that can reject its input in a
/// mathematically meaningful way reports one of these variants; internal
/// consistency violations (a skewness check failing, say) panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular conic")]
    SingularConic,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("not rationally solvable: {0}")]
    NotRational(String),
}
