use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or mutually inconsistent inputs.
    #[error("input error: {0}")]
    Input(String),
    /// An exhaustive computation would exceed the configured candidate budget.
    #[error("budget exceeded: {what} needs {needed} candidates, budget is {budget}")]
    Budget {
        what: String,
        needed: String,
        budget: u64,
    },
    /// The request cannot be satisfied with the given parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// The partition kind is not supported by the measure model.
    #[error("unsupported partition: {0}")]
    UnsupportedPartition(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
