//! Physical parameters, the dimensionless mapping and the closed-form
//! spectrum of the `V1 = 0` Scarf potential.

use serde::Serialize;

use crate::{Error, Result, Scalar};

/// Potential parameters together with every derived dimensionless quantity.
///
/// Couplings are scaled by `2/λ²`: `u_i = 2 V_i / λ²`. The Jacobi basis
/// parameters are `μ² = 1/4 + u₊ - u₋` and `ν² = 1/4 + u₊ + u₋`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScarfParams {
    pub v0: f64,
    pub vplus: f64,
    pub vminus: f64,
    pub v1: f64,
    pub l: f64,
    pub lambda: f64,
    pub u0: f64,
    pub u1: f64,
    pub uplus: f64,
    pub uminus: f64,
    pub mu: f64,
    pub nu: f64,
    pub wplus: f64,
    pub wminus: f64,
    /// `(-1 + √(1 + 4u₊))/4`, only when `V₋ = 0`.
    pub aim_alpha: Option<f64>,
}

impl ScarfParams {
    pub fn new(v0: f64, vplus: f64, vminus: f64, v1: f64, l: f64) -> Result<Self> {
        for (name, v) in [("V0", v0), ("Vplus", vplus), ("Vminus", vminus), ("V1", v1), ("L", l)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        if l <= 0.0 {
            return Err(Error::InvalidParameter(format!("L must be positive, got {l}")));
        }
        if vminus < 0.0 {
            return Err(Error::Reality(format!("V- >= 0 required, got {vminus}")));
        }
        let lambda = std::f64::consts::PI / l;
        let scale = 2.0 / (lambda * lambda);
        let (u0, u1, uplus, uminus) = (v0 * scale, v1 * scale, vplus * scale, vminus * scale);
        let mu2 = 0.25 + uplus - uminus;
        let nu2 = 0.25 + uplus + uminus;
        if mu2 < 0.0 {
            return Err(Error::Reality(format!("V+ - V- >= -λ²/8 required (μ² = {mu2} < 0)")));
        }
        if nu2 < 0.0 {
            return Err(Error::Reality(format!("V+ + V- >= -λ²/8 required (ν² = {nu2} < 0)")));
        }
        let aim_alpha = (vminus == 0.0).then(|| (-1.0 + (1.0 + 4.0 * uplus).sqrt()) / 4.0);
        Ok(Self {
            v0,
            vplus,
            vminus,
            v1,
            l,
            lambda,
            u0,
            u1,
            uplus,
            uminus,
            mu: mu2.sqrt(),
            nu: nu2.sqrt(),
            wplus: vplus + vminus,
            wminus: vplus - vminus,
            aim_alpha,
        })
    }

    /// Sine-bottom well: `V0 = V± = 0`.
    pub fn is_sine_bottom(&self) -> bool {
        self.v0 == 0.0 && self.vplus == 0.0 && self.vminus == 0.0
    }

    /// `ε → E = ε λ²/2`.
    pub fn energy(&self, eps: f64) -> f64 {
        eps * self.lambda * self.lambda / 2.0
    }

    /// `E → ε = 2E/λ²`.
    pub fn eps(&self, energy: f64) -> f64 {
        2.0 * energy / (self.lambda * self.lambda)
    }

    /// `q` of the basis exponents in the tridiagonal case; it carries the energy.
    pub fn q(&self, eps: f64) -> f64 {
        self.u0 - eps
    }

    /// `p = 2V₁/λ²`.
    pub fn p(&self) -> f64 {
        self.u1
    }

    pub fn potential_value(&self, x: f64) -> Result<f64> {
        let half = self.l / 2.0;
        if x.abs() >= half || x.is_nan() {
            return Err(Error::OutOfWell { x, half_width: half });
        }
        let (s, c) = (self.lambda * x).sin_cos();
        Ok(self.v0 + (self.vplus - self.vminus * s) / (c * c) + self.v1 * s)
    }

    /// `ε_n = [n + (μ+ν+1)/2]² + u₀`, exact when `V₁ = 0`.
    pub fn closed_spectrum_eps(&self, n: usize) -> Result<f64> {
        if self.v1 != 0.0 {
            return Err(Error::Precondition(format!("closed-form spectrum needs V1 = 0, got {}", self.v1)));
        }
        let k = n as f64 + (self.mu + self.nu + 1.0) / 2.0;
        Ok(k * k + self.u0)
    }

    /// Energy `E_n` of level `n` when `V₁ = 0`.
    pub fn scarf_closed_spectrum(&self, n: usize) -> Result<f64> {
        let half = 0.5;
        let l2 = self.lambda * self.lambda;
        if self.v1 != 0.0 {
            return Err(Error::Precondition(format!("closed-form spectrum needs V1 = 0, got {}", self.v1)));
        }
        let k = n as f64
            + half
            + half * (0.25 + 2.0 * self.wplus / l2).sqrt()
            + half * (0.25 + 2.0 * self.wminus / l2).sqrt();
        Ok(l2 / 2.0 * k * k + self.v0)
    }

    /// Dimensionless couplings re-derived in working precision `T`.
    pub fn couplings<T: Scalar>(&self) -> Couplings<T> {
        let lambda = T::PI() / T::lit(self.l);
        let scale = T::lit(2.0) / (lambda * lambda);
        let uplus = T::lit(self.vplus) * scale;
        let uminus = T::lit(self.vminus) * scale;
        let quarter = T::lit(0.25);
        let half = T::lit(0.5);
        let mu = (quarter + uplus - uminus).max(T::zero()).sqrt();
        let nu = (quarter + uplus + uminus).max(T::zero()).sqrt();
        Couplings {
            lambda,
            u0: T::lit(self.v0) * scale,
            u1: T::lit(self.v1) * scale,
            uplus,
            uminus,
            mu,
            nu,
            a: (mu - half) * half,
            b: (nu - half) * half,
        }
    }
}

/// Dimensionless quantities in an arbitrary working precision.
///
/// `a = (μ - 1/2)/2` and `b = (ν - 1/2)/2` are the exponents that
/// `(1 - y)^a (1 + y)^b` strips from the wavefunction in the AIM form; for
/// `V₋ = 0` both equal `aim_alpha`.
#[derive(Clone, Copy, Debug)]
pub struct Couplings<T> {
    pub lambda: T,
    pub u0: T,
    pub u1: T,
    pub uplus: T,
    pub uminus: T,
    pub mu: T,
    pub nu: T,
    pub a: T,
    pub b: T,
}
