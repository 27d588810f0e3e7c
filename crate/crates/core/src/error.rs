use thiserror::Error;

use crate::exactpoly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error("divisor classes do not generate the cohomology ring")]
    NotGenerated,
    #[error("symbol {0} is not an essential unknown of this system")]
    UnknownSymbol(String),
    #[error("symbol {0} violates the grading rule")]
    GradingMismatch(String),
    #[error("underdetermined: solution set has dimension {dim} and degree {deg}")]
    Underdetermined { dim: usize, deg: u64 },
    #[error("inconsistent: the ideal is the unit ideal")]
    Inconsistent,
    #[error("ambiguous: zero-dimensional of degree {deg}")]
    Ambiguous { deg: u64 },
    #[error("Groebner step budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("ideal is not zero-dimensional (dimension {dim})")]
    NotZeroDimensional { dim: usize },
    #[error("no rational solution description (degree {deg})")]
    NonRational { deg: u64 },
    #[error("specialization with a zero value for `{0}`")]
    ZeroSpecialization(String),
    #[error("quantization did not terminate")]
    RewriteDiverged,
}

pub type Result<T> = std::result::Result<T, Error>;
