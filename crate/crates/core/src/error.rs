use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("weighted degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("extension field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("seed is not a root: constant term of F(seed) is {0}")]
    SeedNotRoot(String),
    #[error("newton iteration did not converge to order {0}")]
    NoConvergence(usize),
    #[error("asymmetric input: coefficient of {monomial} differs from its swap")]
    Asymmetric { monomial: String },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("point is not on the curve: |Y^2 - Q(X)| = {0:e}")]
    OffCurve(f64),
    #[error("coincident X coordinates")]
    CoincidentX,
    #[error("sampling failed after {0} draws")]
    SamplingFailed(usize),
    #[error("numeric blow-up at s = {s}: {reason}")]
    BlowUp { s: f64, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
