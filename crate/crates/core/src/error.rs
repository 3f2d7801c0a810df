//! Error type shared by the whole engine.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient variable count mismatch: {0} vs {1}")]
    AmbientMismatch(u32, u32),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("modulus {0} is not an odd prime")]
    NotAnOddPrime(u64),

    #[error("modulus {0} exceeds the supported range (must be < 2^31)")]
    ModulusTooLarge(u64),

    #[error("the field has no square root of -1 (needs p = 1 mod 4)")]
    NoSqrtMinusOne,

    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("colength at level {requested} requires a truncation of level >= {requested}, have {available}")]
    InsufficientTruncation { requested: u32, available: u32 },

    #[error("generator is only known modulo m^{available}, need degree < {requested}")]
    GeneratorTruncated { requested: u32, available: u32 },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("cannot solve for variable {var}: its linear coefficient is not a unit")]
    NotSolvable { var: u32 },

    #[error("polynomial does not vanish at the origin")]
    NonzeroConstantTerm,

    #[error("zero polynomial rejected: {0}")]
    ZeroPolynomial(&'static str),

    #[error("unit polynomial rejected: {0}")]
    UnitPolynomial(&'static str),

    #[error("scheme has dimension {dim} but the operation requires dimension <= {max}")]
    DimensionTooLarge { dim: u32, max: u32 },

    #[error("scheme has dimension {found}, expected {expected}")]
    DimensionMismatch { found: u32, expected: u32 },

    #[error("truncation level too small: {0}")]
    TruncationLimited(String),

    #[error("level {level} is too small to test any jet inequality for this query")]
    LevelTooSmall { level: u32 },

    #[error("query list is empty")]
    EmptyQueryList,

    #[error("query is invalid: {0}")]
    InvalidQuery(String),

    #[error("family constraint cannot be satisfied by the given basis")]
    UnsatisfiableFamily,

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown builtin scheme `{0}`")]
    UnknownBuiltin(String),

    #[error("a finite Milnor/Tjurina number was required but the colength did not stabilize below level {cap} (singular locus dimension estimate {dim_estimate})")]
    UnboundedInvariant { cap: u32, dim_estimate: u32 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// CLI exit code class: 2 for usage/parse problems, 1 for mathematical
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Usage(_)
            | Error::UnknownBuiltin(_)
            | Error::InvalidQuery(_)
            | Error::NotAnOddPrime(_)
            | Error::ModulusTooLarge(_)
            | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
