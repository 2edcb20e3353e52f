use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps onto a stable machine-readable code (see [`Error::code`])
/// and a process exit status (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus must be monic of degree {degree}: {reason}")]
    NotMonic { degree: u32, reason: String },

    #[error("modulus is not primitive ({})", if *.reducible { "reducible" } else { "irreducible, but x has order {order} < {expected}" })]
    NotPrimitive {
        reducible: bool,
        order: u64,
        expected: u64,
    },

    #[error("field of size {p}^{n} exceeds the cap of {cap} elements")]
    SizeCapExceeded { p: u64, n: u32, cap: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("discrete logarithm of zero")]
    LogOfZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("invalid field element: {0}")]
    InvalidElement(String),

    #[error("field degree {n} is not 2s for s = {s}")]
    DegreeMismatch { n: u32, s: u32 },

    #[error("closed-form construction requires an odd prime, got p = {0}")]
    OddPrimeRequired(u64),

    #[error("{t} does not divide {n}")]
    NotADivisor { t: u32, n: u32 },

    #[error("elements do not form an additive subgroup: {0}")]
    NotASubgroup(String),

    #[error("dimension {d} out of range 0..={s}")]
    InvalidDimension { d: u32, s: u32 },

    #[error("enumeration would produce {count} subspaces, cap is {cap}")]
    EnumerationCapExceeded { count: u128, cap: u64 },

    #[error("Frobenius image of subgroup {index} is not in the list")]
    ImageNotInList { index: usize },

    #[error("p = 2 has no square root of -1 to select")]
    EvenPrime,

    #[error("invariant generators need n = 4 and p = 1 mod 4 (got p = {p}, n = {n})")]
    WrongCaseTag { p: u64, n: u32 },

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("golden mismatch for p = {p}: missing {missing:?}, unexpected {unexpected:?}")]
    GoldenMismatch {
        p: u64,
        missing: Vec<u64>,
        unexpected: Vec<u64>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NOT_PRIME",
            Error::NotMonic { .. } => "NOT_MONIC",
            Error::NotPrimitive { .. } => "NOT_PRIMITIVE",
            Error::SizeCapExceeded { .. } => "SIZE_CAP",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::LogOfZero => "LOG_OF_ZERO",
            Error::FieldMismatch => "FIELD_MISMATCH",
            Error::InvalidElement(_) => "INVALID_ELEMENT",
            Error::DegreeMismatch { .. } => "DEGREE_MISMATCH",
            Error::OddPrimeRequired(_) => "ODD_PRIME_REQUIRED",
            Error::NotADivisor { .. } => "NOT_A_DIVISOR",
            Error::NotASubgroup(_) => "NOT_A_SUBGROUP",
            Error::InvalidDimension { .. } => "INVALID_DIMENSION",
            Error::EnumerationCapExceeded { .. } => "ENUM_CAP",
            Error::ImageNotInList { .. } => "IMAGE_NOT_IN_LIST",
            Error::EvenPrime => "EVEN_PRIME",
            Error::WrongCaseTag { .. } => "WRONG_CASE_TAG",
            Error::OracleMismatch(_) => "ORACLE_MISMATCH",
            Error::GoldenMismatch { .. } => "GOLDEN_MISMATCH",
            Error::InvalidInput(_) => "INVALID_INPUT",
        }
    }

    /// 3 for oracle and golden mismatches, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OracleMismatch(_) | Error::GoldenMismatch { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
