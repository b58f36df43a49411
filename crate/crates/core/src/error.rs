use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("sweep contradiction: {0}")]
    SweepContradiction(String),
    #[error("window has {bonds} bonds, limit is {limit}")]
    WindowTooLarge { bonds: usize, limit: usize },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("operator support leaves the window: {0}")]
    SupportOutsideWindow(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("no path: {0}")]
    NoPath(String),
    #[error("no clearance: {0}")]
    NoClearance(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("family of {size} operators exceeds the cap {cap}")]
    FamilyTooLarge { size: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
