use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("duplicate edge {{{u}, {v}}} with conflicting weight")]
    ConflictingEdge { u: usize, v: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("missing position for vertex {0}")]
    MissingPosition(usize),

    #[error("vertex sets differ ({left} vs {right} vertices)")]
    VertexSetMismatch { left: usize, right: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("variable index {index} exceeds declared count {count}")]
    VariableOutOfRange { index: usize, count: usize },

    #[error("assignment covers {found} variables, formula needs {needed}")]
    PartialAssignment { needed: usize, found: usize },

    #[error("guard exceeded: {what} is {value}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("clause {clause} has width {width}, limit {limit}")]
    ClauseTooWide {
        clause: usize,
        width: usize,
        limit: usize,
    },

    #[error("clause {0} is empty")]
    EmptyClause(usize),

    #[error("unsupported edge weight {0}")]
    UnsupportedWeight(String),

    #[error("not a certificate: {0}")]
    NotACertificate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
