use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alternative set size must be in 1..={max}, got {size}")]
    InvalidAlternatives { size: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("relation is not a preorder: {reason}")]
    NotAPreorder { reason: &'static str },

    #[error("capacity exceeded: {what} is {value}, limit is {limit}")]
    Capacity { what: &'static str, value: usize, limit: usize },

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("no transitive relation sampled after {attempts} attempts")]
    RejectionBudget { attempts: usize },

    #[error("median threshold r = {r} must satisfy 1 <= r <= n = {n}")]
    ThresholdOutOfRange { r: usize, n: usize },

    #[error("median of an empty list of relations")]
    EmptyInput,

    #[error("polynomial variable {index} is unbound (only {arity} arguments)")]
    UnboundVariable { index: usize, arity: usize },

    #[error("no simple {k}-regular graph on {n} vertices")]
    InfeasibleDegree { n: usize, k: usize },

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("graph generation gave up after {attempts} restarts")]
    GraphBudget { attempts: usize },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("t_max must be at least 1")]
    ZeroHorizon,
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
