use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("gamma pole at z = {0}")]
    Pole(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("invalid series: {0}")]
    Spec(String),
    #[error("series did not converge: {0}")]
    NoConvergence(String),
    #[error("point is off the hyperplane e+f+g-a-b-c-d=1 (residual {0:e})")]
    Hyperplane(f64),
    #[error("parameter domain violated: {0}")]
    Domain(String),
    #[error("no pole-separating contour: {0}")]
    Contour(String),
    #[error("quadrature stalled: {0}")]
    QuadratureStall(String),
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("Coxeter relation fails for pair ({0}, {1})")]
    PresentationFailure(String, String),
    #[error("double coset partition failed: {0}")]
    Partition(String),
    #[error("group enumeration exceeded {0} elements")]
    EnumerationOverflow(usize),
    #[error("sampler exhausted after {0} rejections")]
    SamplerExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
