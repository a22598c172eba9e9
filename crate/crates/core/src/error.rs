use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable index {index} out of range for {nvars} variables (position {pos})")]
    VariableOutOfRange { index: usize, nvars: usize, pos: usize },
    #[error("coefficient not in domain: {0}")]
    CoefficientNotInDomain(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("all coordinates are zero")]
    AllZero,
    #[error("zero input")]
    ZeroInput,
    #[error("all coordinates vanish modulo {0}")]
    AllCoordinatesVanish(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {used} > {limit}")]
    BudgetExceeded { used: u64, limit: u64 },
    #[error("derivative identically zero after {attempts} attempts")]
    DerivativeIdenticallyZero { attempts: u32 },
    #[error("non-proper intersection: {0}")]
    NonProperIntersection(String),
    #[error("no interpolant of degree <= {cap}")]
    NoInterpolant { cap: u32 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("regime violation: {0}")]
    RegimeViolation(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("irrecoverable class: {0}")]
    IrrecoverableClass(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
