use thiserror::Error;

/// Errors shared by every module.
///
/// `BadInput` covers violated preconditions on user-supplied data; the other
/// variants report internal consistency failures that a caller may want to
/// surface as verification failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("word too long for truncation N={n}: {word}")]
    WordTooLong { word: String, n: usize },
    #[error("truncation N={0} out of range (0..=12)")]
    TruncationOutOfRange(usize),
    #[error("non-composable arguments: {0}")]
    NotComposable(String),
    #[error("parameters lie on the wall (z0 and z1 are collinear)")]
    OnWall,
    #[error("truncation did not stabilize: {0}")]
    NotStabilized(String),
    #[error("cocycle condition violated: {0}")]
    CocycleViolation(String),
    #[error("degenerate position: {0}")]
    Degenerate(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
