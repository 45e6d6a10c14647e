use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument lies outside the range covered by a table or zero set.
    #[error("range error: {0}")]
    Range(String),

    #[error("height {requested} exceeds zero set completeness height {t_max}")]
    HeightExceeded { requested: f64, t_max: f64 },

    #[error("zero count could not be reconciled with the counting formula at T = {height}: found {found}, expected about {expected:.3}")]
    Completeness { height: f64, found: usize, expected: f64 },

    #[error("line {line}: cannot parse {text:?} as a positive ordinate")]
    Parse { line: usize, text: String },

    #[error("line {line}: ordinate {value} does not exceed the previous ordinate {previous}")]
    Ordering { line: usize, value: f64, previous: f64 },

    #[error("sieve limit {requested} exceeds capacity {capacity}")]
    Capacity { requested: u64, capacity: u64 },

    #[error("quadrature failed to converge: {0}")]
    Convergence(String),

    #[error("{0} is an integer; the step function is ambiguous at jump points")]
    IntegerArgument(f64),

    #[error("schedule domain error: {0}")]
    ScheduleDomain(String),

    #[error("empty parameter grid")]
    EmptyGrid,

    #[error("invalid cache file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence(_) | Error::Completeness { .. } => 4,
            _ => 3,
        }
    }
}
