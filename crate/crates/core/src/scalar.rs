use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

/// Real scalar used by the symbolic AIM machinery.
///
/// Implemented for `f64` and for the double-double [`TwoFloat`] (about 31
/// significant digits). `num_traits::Float::epsilon` is not usable for
/// `TwoFloat`, hence [`Scalar::unit_roundoff`].
pub trait Scalar: Float + FloatConst + Debug + Display + Send + Sync + 'static {
    /// Half the spacing of representable numbers around 1.
    fn unit_roundoff() -> Self;

    /// Relative size below which a polynomial remainder is treated as zero
    /// when cancelling common `(1 - y²)` factors.
    fn cancel_tolerance() -> Self;

    fn lit(x: f64) -> Self;

    fn as_f64(self) -> f64;
}

impl Scalar for f64 {
    fn unit_roundoff() -> Self {
        f64::EPSILON / 2.0
    }

    fn cancel_tolerance() -> Self {
        1e-10
    }

    fn lit(x: f64) -> Self {
        x
    }

    fn as_f64(self) -> f64 {
        self
    }
}

impl Scalar for TwoFloat {
    fn unit_roundoff() -> Self {
        TwoFloat::from(2f64.powi(-105))
    }

    fn cancel_tolerance() -> Self {
        TwoFloat::from(1e-24)
    }

    fn lit(x: f64) -> Self {
        TwoFloat::from(x)
    }

    fn as_f64(self) -> f64 {
        self.hi() + self.lo()
    }
}

/// Working precision of the AIM coefficient arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// IEEE double, about 16 digits.
    #[default]
    Double,
    /// Double-double, about 31 digits.
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "double" => Ok(Self::Double),
            "extended" => Ok(Self::Extended),
            other => Err(format!("unknown precision `{other}` (expected double|extended)")),
        }
    }
}
