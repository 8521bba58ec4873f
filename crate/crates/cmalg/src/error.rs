use thiserror::Error;

/// Errors raised by the library. Every fallible operation returns `Result<T, Error>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    CapacityExceeded {
        what: String,
        requested: u128,
        limit: u128,
    },
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("map is not well defined: relation {relation} of the source does not map into the target relations")]
    IllDefinedMap { relation: usize },
    #[error("not a complex: boundary maps do not compose to zero at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("NotAssociative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("NotCommutative at ({0},{1})")]
    NotCommutative(usize, usize),
    #[error("NoUnit: the given unit vector does not act as identity")]
    NoUnit,
    #[error("NotAnIdeal: span of the ideal basis is not closed under multiplication by R")]
    NotAnIdeal,
    #[error("NotNilpotent: the ideal has no vanishing power")]
    NotNilpotent,
    #[error("NotSplitAlongBasis: {0}")]
    NotSplitAlongBasis(String),
    #[error("InfiniteCoefficients: operation needs a finite prime field")]
    InfiniteCoefficients,
    #[error("NonInvertibleDenominator: {0} is not invertible in the coefficients")]
    NonInvertibleDenominator(u64),
    #[error("IndexOutOfRange: {0}")]
    IndexOutOfRange(String),
    #[error("NonUnitEntry: symbol entry {0} is not a unit")]
    NonUnitEntry(usize),
    #[error("NoRelativeEntry: no symbol entry lies in (1+I)*")]
    NoRelativeEntry,
    #[error("MalformedGenerator: {0}")]
    MalformedGenerator(String),
    #[error("NotExact: {0}")]
    NotExact(String),
    #[error("NotStabilized: pages still change at r = {0}")]
    NotStabilized(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not in the subgroup")]
    NotInSubgroup,
    #[error("group was computed without element-level data")]
    NoElementData,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
