use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("field of order {order} exceeds the cap of {cap} elements")]
    BudgetExceeded { order: u64, cap: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is not a monic irreducible polynomial of degree {degree}")]
    InvalidModulus { degree: usize },
    #[error("value {value} is not an element of a field with {order} elements")]
    InvalidElement { value: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field towers")]
    TowerMismatch,
    #[error("elements are linearly dependent over the base field")]
    DependentGenerators,
    #[error("bad dimensions: {0}")]
    BadDimension(String),
    #[error("generator rows are linearly dependent")]
    RankDeficient,
    #[error("enumeration of {size} codewords exceeds the cap of {cap}")]
    EnumerationTooLarge { size: u128, cap: u64 },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("operation requires a nonzero code")]
    ZeroCode,
    #[error("code is not an optimal anticode")]
    NotOptimalAnticode,
    #[error("almost self-dual bases are only defined here for odd q; q = {0}")]
    EvenCharacteristic(u32),
    #[error("basis search failed after {attempts} randomized attempts")]
    SearchFailed { attempts: u32 },
    #[error("malformed input: {0}")]
    Malformed(String),
}
