use serde::Serialize;

use super::iterate::{ratio_polys, AimState};
use crate::algebra::{real_roots, Polynomial, RootWindow};
use crate::quad::integrate;
use crate::{Error, Result, Scalar};

const QUAD_TOL: f64 = 1e-10;

/// Residues within this distance of a nonpositive integer are treated as
/// exact (a node for `-1`, a removable point for `0`).
const RESIDUE_SLACK: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AimWavefunction {
    pub x: Vec<f64>,
    /// `None` where a pole of `S_t/k_t` lies between `y = 0` and the sample.
    pub psi: Vec<Option<f64>>,
    /// Real poles of `S_t/k_t` in `(-1, 1)` whose residue is a nonpositive
    /// integer, as `(y, residue)`. A residue of `-1` is a node of `ψ`.
    pub regular_poles: Vec<(f64, f64)>,
    /// Poles that cannot be integrated through.
    pub blocking_poles: Vec<f64>,
}

impl AimWavefunction {
    /// All samples, or the first pole that blocked one of them.
    pub fn values(&self) -> Result<Vec<f64>> {
        self.psi
            .iter()
            .map(|v| v.ok_or_else(|| Error::PoleOnPath(self.blocking_poles.first().copied().unwrap_or(f64::NAN))))
            .collect()
    }
}

struct Integrand {
    num: Polynomial<f64>,
    den: Polynomial<f64>,
    /// `χ = num/den · (1 - y²)^power`.
    power: i32,
    poles: Vec<(f64, f64)>,
}

impl Integrand {
    fn chi(&self, y: f64) -> f64 {
        self.num.eval(y) / self.den.eval(y) * (1.0 - y * y).powi(self.power)
    }

    /// `χ` minus the principal parts of the regular poles.
    fn smooth(&self, y: f64) -> f64 {
        self.poles.iter().fold(self.chi(y), |acc, &(p, r)| acc - r / (y - p))
    }
}

/// `ψ(x) = C cos(λx) (1-y)^a (1+y)^b exp(-∫₀^y S_t/k_t)` at `y = sin(λx)`.
///
/// Real poles of `S_t/k_t` with residue `r ≈ -n` contribute the exact factor
/// `(y - p)^n`; the remainder is integrated by adaptive quadrature from 0.
/// `C` makes `ψ(0) = 1`, or `ψ'(0) = 1` when the origin is a node.
pub fn aim_wavefunction<T: Scalar>(state: &AimState<T>, t: usize, eps: f64, xs: &[f64]) -> Result<AimWavefunction> {
    if t > state.iterations() {
        return Err(Error::Index { index: t, max: state.iterations() });
    }
    let p = state.pair.params;
    let half = p.l / 2.0;
    if let Some(&x) = xs.iter().find(|x| !(x.abs() <= half)) {
        return Err(Error::OutOfWell { x, half_width: half });
    }
    let (num, den, power) = ratio_polys(state, t, T::lit(eps));
    // one common factor so that the ratio is unchanged
    let c = num.max_abs().max(den.max_abs());
    if c.is_zero() {
        return Err(Error::PoleOnPath(0.0));
    }
    let to_f64 = |q: Polynomial<T>| q.scale(c.recip()).map(T::as_f64);
    let (num, den) = (to_f64(num), to_f64(den));
    if den.is_zero() {
        return Err(Error::PoleOnPath(0.0));
    }
    let mut regular = Vec::new();
    let mut blocking = Vec::new();
    let dd = den.derivative();
    let roots = real_roots(&den, RootWindow::new(-1.0, 1.0))?;
    for r in &roots.roots {
        let y = r.value;
        if y.abs() >= 1.0 {
            continue;
        }
        let residue = num.eval(y) * (1.0 - y * y).powi(power) / dd.eval(y);
        let n = residue.round();
        if r.multiplicity == 1 && n <= 0.0 && (residue - n).abs() <= RESIDUE_SLACK {
            regular.push((y, residue));
        } else {
            blocking.push(y);
        }
    }
    let f = Integrand { num, den, power, poles: regular.clone() };
    let (a, b) = (state.pair.exponents.0.as_f64(), state.pair.exponents.1.as_f64());

    let raw = |x: f64| -> Option<f64> {
        let y = (p.lambda * x).sin();
        let c = (p.lambda * x).cos();
        if c <= 0.0 || y.abs() >= 1.0 {
            return Some(0.0);
        }
        if blocking.iter().any(|&q| (q >= 0.0) == (y >= 0.0) && q.abs() <= y.abs()) {
            return None;
        }
        let integral = integrate(|s| f.smooth(s), 0.0, y, QUAD_TOL).value;
        let mut v = c * (1.0 - y).powf(a) * (1.0 + y).powf(b) * (-integral).exp();
        for &(q, r) in &regular {
            // exp(-r ln|y - q|) with the sign of (y - q)^n for integer -r = n
            let n = -r.round();
            let d = y - q;
            v *= d.abs().powf(-r);
            if n as i64 % 2 == 1 && d < 0.0 {
                v = -v;
            }
        }
        Some(v)
    };

    let at_origin = raw(0.0);
    let norm = match at_origin {
        Some(v) if v.abs() > 1e-300 && !regular.iter().any(|&(q, _)| q.abs() < 1e-12) => v,
        _ => {
            let h = 1e-6 * p.l;
            match (raw(h), raw(-h)) {
                (Some(r), Some(l)) if r != l => (r - l) / (2.0 * h),
                _ => return Err(Error::PoleOnPath(0.0)),
            }
        }
    };
    let psi = xs.iter().map(|&x| raw(x).map(|v| v / norm)).collect();
    Ok(AimWavefunction { x: xs.to_vec(), psi, regular_poles: regular, blocking_poles: blocking })
}
