use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative exponent {0}")]
    NegativeExponent(f64),
    #[error("cannot divide by X_{var}^{gamma}: minimal exponent in that variable is {min_exponent}")]
    MonomialDivision { var: usize, gamma: f64, min_exponent: f64 },
    #[error("operation needs a one-variable series, got {0} variables")]
    NotOneVariable(usize),
    #[error("series has zero constant term and is not a unit")]
    ZeroConstantTerm,
    #[error("series has nonzero constant term {0}")]
    NonzeroConstantTerm(String),
    #[error("|e^a| = {modulus} is not below the recorded radius {radius} in variable {var}")]
    RadiusViolation { var: usize, modulus: f64, radius: f64 },
    #[error("exponent {exponent} of variable {var} is outside the declared support")]
    SupportViolation { var: usize, exponent: f64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
