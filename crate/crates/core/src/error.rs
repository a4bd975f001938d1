use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error("{what}: got {value}")]
    Domain { what: &'static str, value: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("{0} is undefined for a spectrum of order {1}")]
    UndefinedForOrder(&'static str, usize),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
