//! Exit-code policy: 0 success, 1 property violation, 2 usage or schema
//! problem, 3 resource limit.

use std::fmt;

use stochprobe::ProbeError;

pub const VIOLATION: i32 = 1;
pub const USAGE: i32 = 2;
pub const LIMIT: i32 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

/// Exit code for a library error.
pub fn code_for(err: &ProbeError) -> i32 {
    match err {
        ProbeError::EnumerationLimit { .. } | ProbeError::StateBudget { .. } => LIMIT,
        _ => USAGE,
    }
}

/// Exit code for an error chain: a [`Failure`] or [`ProbeError`] anywhere
/// in it decides, anything else (I/O, parse) counts as usage.
pub fn code_of(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(f) = cause.downcast_ref::<Failure>() {
            return f.code;
        }
        if let Some(p) = cause.downcast_ref::<ProbeError>() {
            return code_for(p);
        }
    }
    USAGE
}
