use thiserror::Error;

/// Errors raised by the algebra, curve and cover routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid field size p^m with p = {p}, m = {m}")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unexpected identifier '{found}' at offset {offset}, expected '{expected}'")]
    WrongVariable {
        offset: usize,
        found: char,
        expected: char,
    },
    #[error("no antiderivative: coefficient of x^{degree} is nonzero and {degree} = -1 mod p")]
    NoAntiderivative { degree: usize },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("defining polynomial has even degree {0}")]
    EvenDegree(usize),
    #[error("defining polynomial must have degree at least 3, got {0}")]
    DegreeTooSmall(usize),
    #[error("defining polynomial is not monic")]
    NotMonic,
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("the zero function has no pole order")]
    ZeroFunction,
    #[error("form exceeds its declared pole bound {bound}")]
    PoleBoundViolated { bound: i64 },
    #[error("pole bound m = {0} must be <= 0")]
    PositivePoleBound(i64),
    #[error("no etale cover of the affine line exists: {0}")]
    NoCover(String),
    #[error("degree {degree} is not admissible")]
    NotAdmissible { degree: u64 },
    #[error("lambda must avoid 0 and 1")]
    BadLambda,
    #[error("normal form is not trace-normalized")]
    NotNormalized,
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
