use thiserror::Error;

/// Errors raised by graph construction, the exact oracles and the filling
/// algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex {v} (edge ({v},{v}))")]
    SelfLoop { v: usize },
    #[error("vertex id {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("({u},{v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("oracle limit: graph has {n} vertices, ceiling is {ceiling}")]
    OracleLimit { n: usize, ceiling: usize },
    #[error("coloring budget exhausted: chromatic number in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize },
    #[error("unknown plane {0}")]
    UnknownPlane(usize),
    #[error("plane {0} is empty")]
    EmptyPlane(usize),
    #[error("plane {0} does not induce a connected subgraph")]
    DisconnectedPlane(usize),
    #[error("vertex {0} is already assigned to a plane")]
    AlreadyAssigned(usize),
    #[error("vertex {0} is not assigned to any plane")]
    Unassigned(usize),
    #[error("color {color} on vertex {v} conflicts on plane {plane}")]
    ColorConflict {
        v: usize,
        plane: usize,
        color: usize,
    },
    #[error("seed on {size} vertices needs {needed} colors, plane capacity is {capacity}")]
    SeedNotColorable {
        size: usize,
        needed: usize,
        capacity: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
