use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },

    #[error("invalid variable set: {0}")]
    InvalidVariables(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("{0} is not a unit of the coefficient ring")]
    NotUnit(String),

    #[error("variable `{0}` evaluated at zero but appears with a negative exponent")]
    ZeroPole(String),

    #[error("no value assigned to variable `{0}`")]
    Unassigned(String),

    #[error("negative argument {0}")]
    NegativeArgument(i64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("basis mismatch: expected {expected}, found {found}")]
    WrongBasis { expected: String, found: String },

    #[error("cannot convert to basis {basis}: {factor} not a unit, and it does not divide the coefficient of {index}")]
    NonInvertibleChange {
        basis: String,
        factor: String,
        index: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix")]
    Singular,

    #[error("invalid braid: {0}")]
    InvalidBraid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
