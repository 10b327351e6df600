use serde::Serialize;

use super::iterate::{aim_iterate, delta_at, AimState};
use super::pair::{make_pair, PairKind};
use crate::algebra::{real_roots, IsolationMethod, RootWindow};
use crate::{Error, Precision, Result, Scalar, ScarfParams, TwoFloat};

/// Fraction of `max(|ε|, 1)` within which a root of `Δ_t` must reappear in
/// `Δ_{t+1}` to count as a level.
pub const PERSISTENCE: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AimSpectrum {
    pub iteration: usize,
    pub y0: f64,
    /// All real roots of `Δ_t(y0, ε)` inside the window, ascending.
    pub roots: Vec<f64>,
    /// Roots that persist into `Δ_{t+1}`; index = level. Equal to `roots`
    /// when `Δ_{t+1}` is not available.
    pub levels: Vec<f64>,
    pub diagnostics: SpectrumDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumDiagnostics {
    /// Degree in `ε` of the quantization polynomial.
    pub degree: usize,
    /// `degree` minus real roots (with multiplicity) anywhere on the line.
    pub complex_roots: usize,
    pub outside_window: usize,
    pub merged_clusters: usize,
    pub non_persistent: Vec<f64>,
    pub method: IsolationMethod,
}

/// Root window in `f64`, converted to the working precision on use.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Default for Window {
    fn default() -> Self {
        Self { lo: -1e4, hi: 1e4 }
    }
}

impl Window {
    fn to<T: Scalar>(self) -> RootWindow<T> {
        RootWindow::new(T::lit(self.lo), T::lit(self.hi))
    }
}

fn roots_at<T: Scalar>(
    state: &AimState<T>,
    t: usize,
    y0: f64,
    window: Window,
) -> Result<(Vec<f64>, SpectrumDiagnostics)> {
    let poly = delta_at(state, t, T::lit(y0))?;
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let all = real_roots(&poly, RootWindow::unbounded())?;
    let window: RootWindow<T> = window.to();
    let inside: Vec<f64> = all.roots.iter().filter(|r| window.contains(r.value)).map(|r| r.value.as_f64()).collect();
    let degree = poly.degree().unwrap_or(0);
    let diagnostics = SpectrumDiagnostics {
        degree,
        complex_roots: degree.saturating_sub(all.real_count()),
        outside_window: all.roots.len() - inside.len(),
        merged_clusters: all.merged_clusters,
        non_persistent: Vec::new(),
        method: all.method,
    };
    Ok((inside, diagnostics))
}

/// Roots of `Δ_t` at `y0`, with levels filtered by persistence into `Δ_{t+1}`
/// when the state is deep enough.
pub fn aim_spectrum<T: Scalar>(state: &AimState<T>, t: usize, y0: f64, window: Window) -> Result<AimSpectrum> {
    if !(y0.abs() < 1.0) {
        return Err(Error::SingularPoint(y0));
    }
    let (roots, mut diagnostics) = roots_at(state, t, y0, window)?;
    if roots.is_empty() {
        return Err(Error::NoRealRoots);
    }
    let levels = if t < state.iterations() {
        let (next, _) = roots_at(state, t + 1, y0, window)?;
        let (keep, drop): (Vec<f64>, Vec<f64>) =
            roots.iter().partition(|&&r| next.iter().any(|&s| (s - r).abs() <= PERSISTENCE * r.abs().max(1.0)));
        diagnostics.non_persistent = drop;
        keep
    } else {
        roots.clone()
    };
    Ok(AimSpectrum { iteration: t, y0, roots, levels, diagnostics })
}

/// Builds the pair, iterates `t + 1` times and extracts the spectrum of `Δ_t`.
pub fn solve_aim<T: Scalar>(p: &ScarfParams, kind: PairKind, t: usize, y0: f64, window: Window) -> Result<AimSpectrum> {
    let pair = make_pair::<T>(p, kind)?;
    let state = aim_iterate(&pair, t + 1, true)?;
    aim_spectrum(&state, t, y0, window)
}

/// [`solve_aim`] dispatched on the runtime precision switch.
pub fn solve_aim_with(
    p: &ScarfParams,
    kind: PairKind,
    t: usize,
    y0: f64,
    window: Window,
    precision: Precision,
) -> Result<AimSpectrum> {
    match precision {
        Precision::Double => solve_aim::<f64>(p, kind, t, y0, window),
        Precision::Extended => solve_aim::<TwoFloat>(p, kind, t, y0, window),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::published;

    #[test]
    fn first_iteration_has_two_levels() {
        let s = solve_aim::<f64>(&published::case1(), PairKind::Case1, 1, 0.0, Window::default()).unwrap();
        assert_eq!(s.roots.len(), 2);
        assert!((s.roots[0] - 1.09898585279422).abs() < 1e-10);
        assert!((s.roots[1] - 4.195636).abs() < 1e-6);
    }

    #[test]
    fn singular_start_is_rejected() {
        let r = solve_aim::<f64>(&published::case1(), PairKind::Case1, 2, 1.0, Window::default());
        assert!(matches!(r, Err(Error::SingularPoint(_))));
    }

    #[test]
    fn sine_bottom_ten_iterations() {
        let s = solve_aim::<f64>(&published::case2(), PairKind::Case2, 10, 0.0, Window::default()).unwrap();
        assert!((s.levels[0] - 0.9965804414948881).abs() < 1e-13, "{:?}", s);
    }
}
