use alloc::string::String;

/// Errors raised by the algebra, calculus and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parity error: {0}")]
    Parity(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("bracket does not close in the span of the basis; residual {0}")]
    Closure(String),
    #[error("adjoint series did not terminate within depth {0}")]
    Truncation(usize),
    #[error("no normal form: {0}")]
    NoMatch(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("no stored invariants for subalgebra {0}")]
    UnsupportedSubalgebra(String),
    #[error("reduction error: {0}")]
    Reduction(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("unbound symbol `{0}`")]
    Unbound(String),
}

pub type Result<T> = core::result::Result<T, Error>;
