use thiserror::Error;

use crate::field::FieldOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("p must be an odd prime > 3, got {0}")]
    BadModulus(u32),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("{0:?} needs a second operand")]
    MissingOperand(FieldOp),
    #[error("multi-index length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("n must be at least 3, got {0}")]
    RankTooSmall(usize),
    #[error("t must have exactly n = {expected} positive entries, got {got:?}")]
    BadTuple { expected: usize, got: Vec<u32> },
    #[error("ambient algebra has {0} basis monomials, above the supported limit")]
    TooLarge(u64),
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("variable index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("index {0} is not an odd variable index")]
    NotOddIndex(usize),
    #[error("zd is only defined on monomials without x_(2n+1)")]
    ContactFactor,
    #[error("multi-index {0:?} outside the truncation bounds")]
    AlphaOutOfRange(Vec<u32>),
    #[error("odd index set {0:?} is not a strictly increasing subset of n+1..=2n")]
    BadOddSet(Vec<usize>),
    #[error("tuple {0:?} is not strictly increasing inside 1..=n")]
    NotIncreasing(Vec<usize>),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(&'static str),
    #[error("element is not {0}-integral")]
    NotIntegral(usize),
    #[error("inadmissible label: {0}")]
    Inadmissible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("subspace is not closed under the bracket: [{left}, {right}] leaves it")]
    ClosureViolation { left: String, right: String },
    #[error("seed {0} is not in the ambient subspace")]
    SeedOutside(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{element} does not normalize the algebra: bracket with {witness} leaves it")]
    NotNormalizing { element: String, witness: String },
    #[error("image of basis vector {index} is outside the algebra")]
    ImageOutside { index: usize },
    #[error("power index d = {d} outside 1..={max} for variable {i}")]
    PowerOutOfRange { i: usize, d: u32, max: u32 },
    #[error("{name} violates the superderivation law on ({left}, {right})")]
    NotDerivation { name: String, left: String, right: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("n must be at least 3, got {0}")]
    RankTooSmall(usize),
    #[error("sign of {0:?} is undefined: repeated entries")]
    RepeatedEntry(Vec<usize>),
    #[error("malformed {family} parameters: {reason}")]
    BadFamily { family: String, reason: String },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
