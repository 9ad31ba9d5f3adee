use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("argument {index} has a nonzero constant term; composition is not graded")]
    NonzeroConstantTerm { index: usize },

    #[error("argument {index} is truncated at degree {have}, below the requested degree {want}")]
    InsufficientPrecision { index: usize, have: usize, want: usize },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("polynomial is not homogeneous of degree {degree}")]
    NotHomogeneous { degree: usize },

    #[error("potential has a nonzero linear term")]
    NonzeroLinearTerm,

    #[error("map component {index} has a nonzero constant term")]
    NonzeroMapConstant { index: usize },

    #[error("no vertex tensor of order {order} in the bundle")]
    MissingVertexTensor { order: usize },

    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: &'static str },

    #[error("{what} bound exceeded: requested {requested}, bound {bound}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        bound: usize,
    },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("malformed rational at line {line}, column {column}")]
    MalformedRational { line: usize, column: usize },
}
