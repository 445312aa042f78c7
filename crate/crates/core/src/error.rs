use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid duration function: {0}")]
    InvalidDuration(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("cyclic read-write dependency through `{0}`")]
    Cyclic(String),

    #[error("instance is in {found} form, expected {expected}")]
    WrongForm { expected: String, found: String },

    #[error("infeasible flow: {0}")]
    InfeasibleFlow(String),

    #[error("incompatible duration family: {0}")]
    IncompatibleFamily(String),

    #[error("not series-parallel")]
    NotSeriesParallel,

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("LP solver failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),
}
