use serde::Serialize;

use crate::algebra::{EnergyPolynomial, StructuredRational};
use crate::{Error, Result, Scalar, ScarfParams};

/// Which substitution produced a characteristic pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    /// `ψ = cos(λx) g(y)`; slow, `y0`-dependent convergence whenever `V± ≠ 0`.
    General,
    /// `ψ = cos(λx) (1 - y²)^α g(y)`, requires `V₋ = V₀ = 0`.
    Case1,
    /// Sine-bottom well, `V₀ = V± = 0`.
    Case2,
    /// `ψ = cos(λx) (1 - y)^a (1 + y)^b g(y)` with `a = (μ - 1/2)/2`,
    /// `b = (ν - 1/2)/2`; valid for every parameter set.
    Regularized,
}

impl std::str::FromStr for PairKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(Self::General),
            "case1" => Ok(Self::Case1),
            "case2" => Ok(Self::Case2),
            "regularized" => Ok(Self::Regularized),
            other => Err(format!("unknown pair `{other}` (expected general|case1|case2|regularized)")),
        }
    }
}

/// `g'' = k₀ g' + S₀ g` in `y = sin(λx)`; `ε` lives in the coefficients of `S₀`.
#[derive(Clone, Debug)]
pub struct CharacteristicPair<T> {
    pub k0: StructuredRational<T>,
    pub s0: StructuredRational<T>,
    pub kind: PairKind,
    /// Exponents `(a, b)` of the stripped factor `(1 - y)^a (1 + y)^b`.
    pub exponents: (T, T),
    pub params: ScarfParams,
}

fn linear_in_eps<T: Scalar>(c: T) -> EnergyPolynomial<T> {
    // c - ε
    EnergyPolynomial::new(vec![c, -T::one()])
}

fn constant<T: Scalar>(c: T) -> EnergyPolynomial<T> {
    EnergyPolynomial::constant(c)
}

/// Pair with `α` removed from the `(1 - y²)⁻²` term, `V₋ = V₀ = 0`.
pub fn make_case1_pair<T: Scalar>(p: &ScarfParams) -> Result<CharacteristicPair<T>> {
    if p.vminus != 0.0 || p.v0 != 0.0 {
        return Err(Error::Precondition(format!(
            "case-1 pair needs V- = V0 = 0, got V- = {}, V0 = {}",
            p.vminus, p.v0
        )));
    }
    let c = p.couplings::<T>();
    let alpha = c.a;
    let four = T::lit(4.0);
    let k0 = StructuredRational::new(vec![constant(T::zero()), constant(T::lit(3.0) + four * alpha)], 1);
    let s0 =
        StructuredRational::new(vec![linear_in_eps(T::one() + four * alpha * (alpha + T::one())), constant(c.u1)], 1);
    Ok(CharacteristicPair { k0, s0, kind: PairKind::Case1, exponents: (alpha, alpha), params: *p })
}

pub fn make_case2_pair<T: Scalar>(p: &ScarfParams) -> Result<CharacteristicPair<T>> {
    if !p.is_sine_bottom() {
        return Err(Error::Precondition(format!(
            "case-2 pair needs V0 = V+ = V- = 0, got ({}, {}, {})",
            p.v0, p.vplus, p.vminus
        )));
    }
    let c = p.couplings::<T>();
    let k0 = StructuredRational::new(vec![constant(T::zero()), constant(T::lit(3.0))], 1);
    let s0 = StructuredRational::new(vec![linear_in_eps(T::one()), constant(c.u1)], 1);
    Ok(CharacteristicPair { k0, s0, kind: PairKind::Case2, exponents: (T::zero(), T::zero()), params: *p })
}

/// Untransformed pair; `S₀` keeps the `(u₊ - u₋ y)/(1 - y²)²` term.
pub fn make_general_pair<T: Scalar>(p: &ScarfParams) -> CharacteristicPair<T> {
    let c = p.couplings::<T>();
    let k0 = StructuredRational::new(vec![constant(T::zero()), constant(T::lit(3.0))], 1);
    let regular = StructuredRational::new(vec![linear_in_eps(T::one() + c.u0), constant(c.u1)], 1);
    let singular = StructuredRational::new(vec![constant(c.uplus), constant(-c.uminus)], 2);
    CharacteristicPair {
        k0,
        s0: &regular + &singular,
        kind: PairKind::General,
        exponents: (T::zero(), T::zero()),
        params: *p,
    }
}

/// Pair for `g` after stripping `(1 - y)^a (1 + y)^b`, which removes the
/// `(1 - y²)⁻²` term for any `V₋`.
pub fn make_regularized_pair<T: Scalar>(p: &ScarfParams) -> CharacteristicPair<T> {
    let c = p.couplings::<T>();
    let (a, b) = (c.a, c.b);
    let two = T::lit(2.0);
    let s = a + b;
    let k0 = StructuredRational::new(vec![constant(two * (a - b)), constant(T::lit(3.0) + two * s)], 1);
    let s0 = StructuredRational::new(vec![linear_in_eps(T::one() + c.u0 + s * (s + two)), constant(c.u1)], 1);
    CharacteristicPair { k0, s0, kind: PairKind::Regularized, exponents: (a, b), params: *p }
}

/// Most specific pair that applies: Case 2, then Case 1, else regularized.
pub fn default_pair<T: Scalar>(p: &ScarfParams) -> CharacteristicPair<T> {
    make_pair(p, default_kind(p)).expect("default kind always applies")
}

pub fn default_kind(p: &ScarfParams) -> PairKind {
    if p.is_sine_bottom() {
        PairKind::Case2
    } else if p.vminus == 0.0 && p.v0 == 0.0 {
        PairKind::Case1
    } else {
        PairKind::Regularized
    }
}

pub fn make_pair<T: Scalar>(p: &ScarfParams, kind: PairKind) -> Result<CharacteristicPair<T>> {
    match kind {
        PairKind::General => Ok(make_general_pair(p)),
        PairKind::Case1 => make_case1_pair(p),
        PairKind::Case2 => make_case2_pair(p),
        PairKind::Regularized => Ok(make_regularized_pair(p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1_with_zero_alpha_is_case2() {
        let p = crate::published::case2();
        let a = make_case1_pair::<f64>(&p).unwrap();
        let b = make_case2_pair::<f64>(&p).unwrap();
        assert!(a.k0.approx_eq(&b.k0, 0.0));
        assert!(a.s0.approx_eq(&b.s0, 0.0));
    }

    #[test]
    fn case1_values() {
        let p = crate::published::case1();
        let alpha = p.aim_alpha.unwrap();
        let pair = make_case1_pair::<f64>(&p).unwrap();
        let k = pair.k0.eval(0.5, 3.0).unwrap();
        assert!((k - (3.0 + 4.0 * alpha) * 0.5 / 0.75).abs() < 1e-15);
        let s = pair.s0.eval(0.0, 0.0).unwrap();
        assert!((s - (1.0 + 4.0 * alpha * (alpha + 1.0))).abs() < 1e-15);
        let with_vminus = ScarfParams::new(0.0, 0.25, 0.1, 1.0, 1.0).unwrap();
        assert!(matches!(make_case1_pair::<f64>(&with_vminus), Err(Error::Precondition(_))));
    }

    #[test]
    fn case2_values() {
        let p = crate::published::case2();
        let pair = make_case2_pair::<f64>(&p).unwrap();
        assert_eq!(pair.k0.eval(0.5, 0.0).unwrap(), 2.0);
        let well = ScarfParams::new(0.0, 0.0, 0.0, 0.0, 1.0).unwrap();
        let flat = make_case2_pair::<f64>(&well).unwrap();
        for y in [-0.3, 0.0, 0.6] {
            assert_eq!(flat.s0.eval(y, 1.0).unwrap(), 0.0);
        }
        assert!(make_case2_pair::<f64>(&crate::published::case1()).is_err());
    }

    #[test]
    fn general_pair_structure() {
        let p = crate::published::case2();
        let g = make_general_pair::<f64>(&p);
        let c2 = make_case2_pair::<f64>(&p).unwrap();
        assert!(g.s0.approx_eq(&c2.s0, 0.0));
        let q = ScarfParams::new(0.0, 0.25, 0.1, 1.0, 1.0).unwrap();
        assert_eq!(make_general_pair::<f64>(&q).s0.denom_power(), 2);
    }

    #[test]
    fn regularized_reduces_to_case1() {
        let p = crate::published::case1();
        let r = make_regularized_pair::<f64>(&p);
        let c1 = make_case1_pair::<f64>(&p).unwrap();
        assert!(r.k0.approx_eq(&c1.k0, 1e-15));
        assert!(r.s0.approx_eq(&c1.s0, 1e-15));
    }

    #[test]
    fn default_selection() {
        assert_eq!(default_kind(&crate::published::case1()), PairKind::Case1);
        assert_eq!(default_kind(&crate::published::case2()), PairKind::Case2);
        assert_eq!(default_kind(&crate::published::potential_curve()), PairKind::Regularized);
    }
}
