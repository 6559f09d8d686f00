use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("graph has {n} vertices, at most {max} supported here")]
    TooLarge { n: usize, max: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("vertices must be pairwise distinct")]
    RepeatedVertex,

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),

    #[error("invalid bisplit partition: {0}")]
    InvalidPartition(String),

    #[error("graph is not bisplit")]
    NotBisplit,

    #[error("class {0} is empty")]
    EmptyClass(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("case mismatch: table {table} does not apply to case {case}")]
    CaseMismatch { table: u8, case: String },

    #[error("arguments must be positive integers")]
    NonPositive,
}

pub type Result<T> = std::result::Result<T, Error>;
