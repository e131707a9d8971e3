use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BnError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("node index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid rule at node {node}: {reason}")]
    InvalidRule { node: usize, reason: String },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("node {0} does not have an XOR rule")]
    NotXor(usize),
    #[error("control signal is nonzero at node {0}, which is not a control node")]
    ControlOffSupport(usize),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("control-node set does not make the network controllable")]
    NotControllable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("state space too large: n = {n} exceeds the limit {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("target state is unreachable")]
    Unreachable,
    #[error("network does not match the expected construction: {0}")]
    FamilyMismatch(String),
    #[error("extraction does not match the network: {0}")]
    BadExtraction(String),
}

pub type Result<T> = std::result::Result<T, BnError>;
