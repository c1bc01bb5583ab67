use thiserror::Error;

/// Errors raised by hmskit operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined resultant")]
    UndefinedResultant,
    #[error("discriminant of a constant polynomial")]
    ConstantPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree must be 5 or 6")]
    BadDegree,
    #[error("singular model")]
    SingularModel,
    #[error("all-zero invariant tuple")]
    ZeroInvariants,
    #[error("degenerate abelian surface")]
    DegenerateAbelianSurface,
    #[error("product case; use inose_j_pair")]
    ProductCase,
    #[error("inose_j_pair needs a' = 0 and b'b'' != 0")]
    NotInoseCase,
    #[error("singular fibration")]
    SingularFibration,
    #[error("not an elliptic surface model")]
    NotEllipticModel,
    #[error("quartic is not squarefree")]
    NotSquarefree,
    #[error("invalid component index {index} for {fiber}")]
    InvalidComponent { fiber: String, index: usize },
    #[error("torsion order must be positive")]
    ZeroTorsion,
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("inconsistent counts")]
    InconsistentCounts,
    #[error("prime {0} out of supported range")]
    PrimeOutOfRange(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("database/candidate inconsistency")]
    NoSurvivors,
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
