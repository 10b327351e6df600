use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("reality condition violated: {0}")]
    Reality(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("x = {x} is outside the well (|x| must be < {half_width})")]
    OutOfWell { x: f64, half_width: f64 },

    #[error("y = {0} is outside [-1, 1]")]
    OutOfDomain(f64),

    #[error("rational function is singular at y = {0}")]
    SingularPoint(f64),

    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("index {index} out of range (max {max})")]
    Index { index: usize, max: usize },

    #[error("coefficient overflow at iteration {0}")]
    Overflow(usize),

    #[error("no real root in the search window")]
    NoRealRoots,

    #[error("pole of the AIM integrand at y = {0} lies on the integration path")]
    PoleOnPath(f64),
}

impl Error {
    /// Numerical failures, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Overflow(_) | Error::NoRealRoots | Error::PoleOnPath(_) | Error::SingularPoint(_))
    }
}
