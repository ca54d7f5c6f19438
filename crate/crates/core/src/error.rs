use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bad type, rank, label or other caller-supplied configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// Embedded or on-disk reference data is missing or malformed.
    #[error("data error: {0}")]
    Data(String),
    /// The request is well-formed but outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An input violated an operation's contract (e.g. a matrix that is not
    /// antisymmetric).
    #[error("contract violation: {0}")]
    Contract(String),
    /// A computation stopped after exhausting its step budget.
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
