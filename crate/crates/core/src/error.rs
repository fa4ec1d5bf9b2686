use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HdcError {
    #[error("incompatible lengths: {left} vs {right}")]
    IncompatibleLengths { left: usize, right: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("string length {n} exceeds the brute-force cap of {cap} columns")]
    TooManyColumns { n: usize, cap: usize },

    #[error("dynamic-programming table needs {required} bytes, cap is {cap} bytes; use the search tree instead")]
    TableTooLarge { required: u128, cap: u128 },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("bound violation: {0}")]
    BoundViolation(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("coloring is not proper: edge {{{0}, {1}}} has equal endpoint colors")]
    ImproperColoring(usize, usize),

    #[error("rejected: {0}")]
    Rejected(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, HdcError>;
