//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),

    #[error("field order {p}^{e} exceeds the cap {cap}")]
    OrderExceedsCap { p: u64, e: u32, cap: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("the zero polynomial is not a valid input here")]
    ZeroPolynomial,

    #[error("degree {d} out of range: {reason}")]
    DegreeOutOfRange { d: i64, reason: String },

    #[error("enumeration of {required} items exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("the two forms are linearly dependent")]
    DependentForms,

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("field order {q} is not a perfect square")]
    NonSquareOrder { q: u64 },

    #[error("no line disjoint from the conic's rational points was found")]
    NoPassantFound,

    #[error("the point lies on the conic")]
    PointOnConic,

    #[error("a pencil has only q+1 = {max} distinct members; {requested} requested")]
    TooManyHyperplanes { requested: u64, max: u64 },

    #[error("dehomogenization collapsed to the constant {value}; the chart carries no hypersurface")]
    ZeroForm { value: u16 },

    #[error("index {0} out of range")]
    BadIndex(u64),

    #[error("malformed input: {0}")]
    Malformed(String),
}
