use thiserror::Error;

use crate::multigraph::EdgeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("vertex {vertex} out of range for a graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),

    #[error("cannot contract loop {0}")]
    ContractLoop(EdgeId),

    #[error("edge set {0:?} is not a cycle")]
    NotACycle(Vec<EdgeId>),

    #[error("assigning is not total: no value for cycle {0:?}")]
    IncompleteAssigning(Vec<EdgeId>),

    #[error("assigning has a value for {0:?}, which is not a cycle of the graph")]
    UnexpectedCycle(Vec<EdgeId>),

    #[error("group mismatch: expected moduli {expected:?}, found {found:?}")]
    GroupMismatch { expected: Vec<u64>, found: Vec<u64> },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("edge function has no value for edge {0}")]
    MissingEdgeValue(EdgeId),

    #[error("invalid linear order: {0}")]
    InvalidOrder(String),

    #[error("enumeration budget exceeded: {what} needs {needed} iterations, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("{method} result is not divisible by k^{power}")]
    NotDivisible { method: &'static str, power: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }
}
