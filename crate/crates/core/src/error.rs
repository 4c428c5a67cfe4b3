use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("hyperedge `{0}` is empty")]
    EmptyHyperedge(String),

    #[error("hyperedge `{edge}` references unknown node `{node}`")]
    UnknownNode { edge: String, node: String },

    #[error("hyperedge `{edge}` lists node `{node}` more than once")]
    RepeatedNode { edge: String, node: String },

    #[error("duplicate node `{0}`")]
    DuplicateNode(String),

    #[error("duplicate hyperedge `{0}`")]
    DuplicateEdge(String),

    #[error("map references unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("{0} map is not a bijection")]
    NotBijective(&'static str),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("oracle bound exceeded: {what} has size {size}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),

    #[error("unknown poset element `{0}`")]
    UnknownElement(String),

    #[error("duplicate poset element `{0}`")]
    DuplicateElement(String),

    #[error("simplex `{simplex}` maps into hyperedge `{edge}`, which is truncated in the target")]
    TruncationMismatch { simplex: String, edge: String },

    #[error("coloring domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("feature width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("feature of element #{element} is not representable: {value}")]
    NonFinite { element: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Syntax {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
