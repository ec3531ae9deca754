use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("dimension mismatch: graph has {expected} vertices, vector has {got} entries")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector is zero")]
    ZeroVector,

    #[error("invalid exponent p = {0}")]
    InvalidP(f64),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{oracle} oracle refuses n = {n}: cap is {cap}")]
    OracleCap {
        oracle: &'static str,
        n: usize,
        cap: usize,
    },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
