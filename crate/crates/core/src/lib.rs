//! Bound-state spectra of the generalized trigonometric Scarf potential
//!
//! ```text
//! V(x) = V0 + [V+ - V- sin(λx)] / cos²(λx) + V1 sin(λx),   |x| < L/2,   λ = π/L
//! ```
//!
//! Two independent solvers are provided:
//!
//! * [`aim`]: the asymptotic iteration method. The Schrödinger equation is
//!   mapped to `g'' = k0 g' + S0 g` in `y = sin(λx)`, the pair `(k, S)` is
//!   iterated symbolically over [`algebra::StructuredRational`] and the
//!   energies are read off the roots of the termination determinant
//!   `Δ_t = k_t S_{t-1} - k_{t-1} S_t` at a chosen starting point `y0`.
//!   A plateau-of-stability scan picks `y0`.
//! * [`tra`]: the tridiagonal representation approach. In a Jacobi basis the
//!   wave operator is a symmetric tridiagonal matrix whose eigenvalues are
//!   the energies.
//!
//! All energies are the dimensionless `ε = 2E/λ²` unless stated otherwise.

pub mod aim;
pub mod algebra;
mod error;
pub mod exec;
pub mod jacobi;
pub mod potential;
pub mod published;
pub mod quad;
mod scalar;
pub mod tra;

pub use error::{Error, Result};
pub use exec::Execution;
pub use potential::ScarfParams;
pub use scalar::{Precision, Scalar};
pub use twofloat::TwoFloat;
