use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("order {requested} exceeds capacity {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("graph is not balanced bipartite with respect to the given parts: {0}")]
    NotBalancedBipartite(String),

    #[error("closed form not available for {0}")]
    UnsupportedFamily(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("parameters outside the stated range of {theorem}: {detail}")]
    ParameterOutOfStatedRange { theorem: String, detail: String },

    #[error("order {n} too large for {what} (limit {limit})")]
    OrderTooLarge { n: usize, limit: usize, what: &'static str },

    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("search node budget of {0} exhausted")]
    BudgetExhausted(u64),

    #[error("infeasible scope: {0}")]
    InfeasibleScope(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(format!("json: {e}"))
    }
}
