use super::pair::CharacteristicPair;
use crate::algebra::{EnergyPolynomial, Polynomial, StructuredRational};
use crate::{Error, Result, Scalar};

/// The iterated pairs `(k_t, S_t)` for `t = 0..=T`.
///
/// Stored pairs are the true ones times a joint factor; `scales[t]` is the
/// factor applied at step `t` (`scales[0] = 1`). The roots of `Δ_t` do not
/// depend on it.
#[derive(Clone, Debug)]
pub struct AimState<T> {
    pub pair: CharacteristicPair<T>,
    k: Vec<StructuredRational<T>>,
    s: Vec<StructuredRational<T>>,
    scales: Vec<T>,
}

impl<T: Scalar> AimState<T> {
    pub fn iterations(&self) -> usize {
        self.k.len() - 1
    }

    pub fn k(&self, t: usize) -> Result<&StructuredRational<T>> {
        self.k.get(t).ok_or(Error::Index { index: t, max: self.iterations() })
    }

    pub fn s(&self, t: usize) -> Result<&StructuredRational<T>> {
        self.s.get(t).ok_or(Error::Index { index: t, max: self.iterations() })
    }

    pub fn scales(&self) -> &[T] {
        &self.scales
    }

    /// Product of the step factors up to and including `t`.
    pub fn cumulative_scale(&self, t: usize) -> T {
        self.scales[..=t].iter().fold(T::one(), |acc, &s| acc * s)
    }
}

/// Runs the recursion
///
/// ```text
/// k_t = k'_{t-1} + S_{t-1} + k_0 k_{t-1}
/// S_t = S'_{t-1} + S_0 k_{t-1}
/// ```
///
/// for `t = 1..=iterations`. With `normalize` each new pair is divided by its
/// largest numerator coefficient.
pub fn aim_iterate<T: Scalar>(pair: &CharacteristicPair<T>, iterations: usize, normalize: bool) -> Result<AimState<T>> {
    if iterations == 0 {
        return Err(Error::InvalidParameter("at least one AIM iteration is required".into()));
    }
    if pair.k0.is_zero() {
        return Err(Error::Precondition("k0 must not vanish identically".into()));
    }
    let mut k = Vec::with_capacity(iterations + 1);
    let mut s = Vec::with_capacity(iterations + 1);
    let mut scales = Vec::with_capacity(iterations + 1);
    k.push(pair.k0.clone());
    s.push(pair.s0.clone());
    scales.push(T::one());
    for t in 1..=iterations {
        let (kp, sp) = (&k[t - 1], &s[t - 1]);
        let kn = &(&kp.derivative() + sp) + &(&pair.k0 * kp);
        let sn = &sp.derivative() + &(&pair.s0 * kp);
        let (kn, sn, c) = if normalize {
            let m = kn.max_abs().max(sn.max_abs());
            if m.is_zero() || !m.is_finite() {
                return Err(Error::Overflow(t));
            }
            let c = m.recip();
            (kn.scale(c), sn.scale(c), c)
        } else {
            (kn, sn, T::one())
        };
        if !kn.is_finite() || !sn.is_finite() {
            return Err(Error::Overflow(t));
        }
        k.push(kn);
        s.push(sn);
        scales.push(c);
    }
    Ok(AimState { pair: pair.clone(), k, s, scales })
}

/// `Δ_t = k_t S_{t-1} - k_{t-1} S_t`, with `Δ_0 = -S_0`.
///
/// For `t ≥ 1` the result carries the factor `cumulative_scale(t) ·
/// cumulative_scale(t-1)` relative to the unscaled recursion.
pub fn termination_delta<T: Scalar>(state: &AimState<T>, t: usize) -> Result<StructuredRational<T>> {
    if t > state.iterations() {
        return Err(Error::Index { index: t, max: state.iterations() });
    }
    if t == 0 {
        return Ok(-&state.s[0]);
    }
    Ok(&(&state.k[t] * &state.s[t - 1]) - &(&state.k[t - 1] * &state.s[t]))
}

/// Numerator of `Δ_t` at `y = y0` as a polynomial in `ε`, up to a positive
/// factor. Cheaper than forming `Δ_t` symbolically.
pub fn delta_at<T: Scalar>(state: &AimState<T>, t: usize, y0: T) -> Result<EnergyPolynomial<T>> {
    if t > state.iterations() {
        return Err(Error::Index { index: t, max: state.iterations() });
    }
    if y0.abs() >= T::one() {
        return Err(Error::SingularPoint(y0.as_f64()));
    }
    let q = T::one() - y0 * y0;
    if t == 0 {
        return Ok((-&state.s[0].numerator_at(y0)).normalized().0);
    }
    let (kt, st) = (&state.k[t], &state.s[t]);
    let (kp, sp) = (&state.k[t - 1], &state.s[t - 1]);
    let a = &kt.numerator_at(y0) * &sp.numerator_at(y0);
    let b = &kp.numerator_at(y0) * &st.numerator_at(y0);
    let pa = kt.denom_power() + sp.denom_power();
    let pb = kp.denom_power() + st.denom_power();
    let d = pa.max(pb);
    let a = a.scale(q.powi((d - pa) as i32));
    let b = b.scale(q.powi((d - pb) as i32));
    let out = &a - &b;
    if out.is_zero() {
        return Ok(out);
    }
    Ok(out.normalized().0)
}

/// `S_t / k_t` at `(y, ε)` as an `f64` pair of numerator values and the
/// common denominator power difference, used by the wavefunction.
pub(crate) fn ratio_polys<T: Scalar>(state: &AimState<T>, t: usize, eps: T) -> (Polynomial<T>, Polynomial<T>, i32) {
    let k = &state.k[t];
    let s = &state.s[t];
    (s.numerator_at_energy(eps), k.numerator_at_energy(eps), k.denom_power() as i32 - s.denom_power() as i32)
}

#[cfg(test)]
mod tests {
    use super::super::pair::{make_case1_pair, make_case2_pair};
    use super::*;

    #[test]
    fn first_step_case1_at_origin() {
        // α = 0, u₁ = 1, ε = 0, y = 0: k₁ = 4, S₁ = 1
        let p = crate::ScarfParams::new(0.0, 0.0, 0.0, std::f64::consts::PI.powi(2) / 2.0, 1.0).unwrap();
        let pair = make_case1_pair::<f64>(&p).unwrap();
        let st = aim_iterate(&pair, 1, false).unwrap();
        assert!((st.k(1).unwrap().eval(0.0, 0.0).unwrap() - 4.0).abs() < 1e-14);
        assert!((st.s(1).unwrap().eval(0.0, 0.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn normalization_does_not_move_roots() {
        let pair = make_case2_pair::<f64>(&crate::published::case2()).unwrap();
        let a = aim_iterate(&pair, 6, true).unwrap();
        let b = aim_iterate(&pair, 6, false).unwrap();
        let da = delta_at(&a, 6, 0.2).unwrap();
        let db = delta_at(&b, 6, 0.2).unwrap();
        let ra = crate::algebra::real_roots(&da, Default::default()).unwrap().values();
        let rb = crate::algebra::real_roots(&db, Default::default()).unwrap().values();
        assert_eq!(ra.len(), rb.len());
        for (x, y) in ra.iter().zip(&rb) {
            assert!((x - y).abs() < 1e-10 * x.abs().max(1.0));
        }
    }

    #[test]
    fn delta_at_matches_symbolic_delta() {
        let pair = make_case1_pair::<f64>(&crate::published::case1()).unwrap();
        let st = aim_iterate(&pair, 4, true).unwrap();
        for t in 0..=4 {
            let sym = termination_delta(&st, t).unwrap();
            let fast = delta_at(&st, t, 0.3).unwrap();
            let slow = sym.numerator_at(0.3).normalized().0;
            let scale = if slow.leading().signum() == fast.leading().signum() { 1.0 } else { -1.0 };
            assert!((&slow.scale(scale) - &fast).max_abs() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn index_and_domain_errors() {
        let pair = make_case2_pair::<f64>(&crate::published::case2()).unwrap();
        let st = aim_iterate(&pair, 2, true).unwrap();
        assert!(matches!(termination_delta(&st, 3), Err(Error::Index { .. })));
        assert!(matches!(delta_at(&st, 1, 1.0), Err(Error::SingularPoint(_))));
        assert!(aim_iterate(&pair, 0, true).is_err());
    }
}
