//! Exact-structure arithmetic for the AIM recursion.
//!
//! * [`Polynomial`]: univariate real polynomial. As [`EnergyPolynomial`] it
//!   is the coefficient ring (polynomials in `ε`).
//! * [`StructuredRational`]: `N(y; ε) / (1 - y²)^d`, where `N` is a
//!   polynomial in `y` with [`EnergyPolynomial`] coefficients. The family is
//!   closed under the AIM recursion for every characteristic pair used here.
//! * [`real_roots`]: Sturm-sequence isolation plus safeguarded Newton
//!   refinement of the real roots of a polynomial.

mod poly;
mod rational;
mod roots;

pub use poly::{EnergyPolynomial, Polynomial};
pub use rational::StructuredRational;
pub use roots::{real_roots, sturm_count, IsolationMethod, RealRoot, RootReport, RootWindow};
