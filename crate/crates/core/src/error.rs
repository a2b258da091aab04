use thiserror::Error;

use crate::witness::ViolationWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("partial coloring: pair {{{u},{v}}} is uncolored")]
    PartialColoring { u: usize, v: usize },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<usize>, reason: String },

    #[error("simple hypergraph required: edge {edge:?} has multiplicity {multiplicity}")]
    SimpleRequired { edge: Vec<usize>, multiplicity: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("blocks {first:?} and {second:?} share more than one point")]
    OverlappingBlocks { first: Vec<usize>, second: Vec<usize> },

    #[error("no built-in exact design for n = {0} (supported: 13, 16, 25, 28)")]
    UnsupportedDesign(usize),

    #[error("precondition violated: {0}")]
    Precondition(Box<ViolationWitness>),

    #[error("no configuration-avoiding coloring found: stuck at pair {{{u},{v}}} after {restarts_used} restarts")]
    MatchFailure {
        u: usize,
        v: usize,
        restarts_used: u32,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::ParamOutOfRange(msg.into())
    }
}
