use thiserror::Error;

/// Errors raised by the laboratory. Out-of-domain formula evaluations are
/// values (`ExtremalKind::OutOfDomain`), not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a graph with at least one vertex")]
    EmptyGraph,

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex sets overlap")]
    OverlappingSets,

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("input is not a tree: {0}")]
    NotATree(String),

    #[error("invalid tree spec: {0}")]
    InvalidSpec(String),

    #[error("{family} requires {requirement}, got {got}")]
    BelowMinimum {
        family: String,
        requirement: String,
        got: String,
    },

    #[error("regular graph does not exist: {0}")]
    NoRegularGraph(String),

    #[error("construction parameters invalid: {0}")]
    Construction(String),

    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("containment search aborted after {nodes} nodes (budget exhausted)")]
    BudgetExhausted { nodes: u64 },

    #[error("pair not covered by the theorem table: {0}")]
    NotCovered(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
