use alloc::string::String;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("field order {p}^{r} exceeds the supported maximum of {max}")]
    FieldTooLarge { p: u32, r: u32, max: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} is out of range for a field of order {1}")]
    ElementOutOfRange(u32, u32),
    #[error("the quadratic character is undefined on 0")]
    CharacterOfZero,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("codes are defined over different fields")]
    FieldMismatch,
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("{what} needs {needed} steps, above the cap of {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("MacWilliams transform produced a non-integral count at weight {0}")]
    NonIntegral(usize),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("implication violated: {0}")]
    InvariantViolated(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
