use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("denominator vanishes at z = 0")]
    ZeroConstantTerm,
    #[error("resultant vanishes identically (shared component)")]
    IdenticallyZero,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("state space too large: {0} elements exceed the guard of {1}")]
    Guard(usize, usize),
    #[error("root finder did not converge (worst residual {worst_residual:e} after {iterations} iterations)")]
    NonConvergence { worst_residual: f64, iterations: usize },
    #[error("predicate not monotone on bracket: {0}")]
    NotMonotone(String),
    #[error("feature absent: {0}")]
    FeatureAbsent(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
