use thiserror::Error;

/// Errors raised by the probing library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbeError {
    /// An exact enumeration would exceed its size cap.
    #[error("enumeration limit exceeded for {what}: size {size} > limit {limit}")]
    EnumerationLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// The adaptive DP or a state search touched too many states.
    #[error("state budget exceeded in {what}: more than {limit} states")]
    StateBudget { what: &'static str, limit: usize },

    #[error("invalid probability {value} at element {index}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("element index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid strategy tree: {0}")]
    InvalidTree(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, ProbeError>;

pub(crate) fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(ProbeError::EnumerationLimit { what, size, limit })
    } else {
        Ok(())
    }
}
