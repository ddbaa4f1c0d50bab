use thiserror::Error;

use crate::grid::Coord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("malformed configuration: {0}")]
    MalformedConfig(String),

    #[error("graph has {n} vertices, above the brute-force limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("state space of {estimate} configurations exceeds budget {budget}")]
    Budget { estimate: u128, budget: u128 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is empty")]
    EmptyGraph,

    #[error("guard totals differ: {0} vs {1}")]
    TotalMismatch(u32, u32),

    #[error("vertex {0} is guarded and cannot be attacked")]
    GuardedVertex(usize),

    #[error("illegal defense move {from}->{to}: {reason}")]
    IllegalMove {
        from: usize,
        to: usize,
        reason: &'static str,
    },

    #[error("invalid core for policy: {0}")]
    InvalidCore(String),

    #[error("coordinate ({}, {}) is guarded and cannot be attacked", .0.x, .0.y)]
    GuardedCell(Coord),

    #[error("domination index {count} at ({}, {}), expected exactly one", .at.x, .at.y)]
    IndexViolation { at: Coord, count: usize },

    #[error("invalid patrol offset: {0}")]
    InvalidOffset(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
