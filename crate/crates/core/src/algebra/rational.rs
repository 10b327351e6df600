use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{EnergyPolynomial, Polynomial};
use crate::{Error, Result, Scalar};

/// `N(y; ε) / (1 - y²)^d` with `N = Σ_i N_i(ε) y^i`.
///
/// Kept canonical: when `d > 0` the numerator is not divisible by `1 - y²`.
/// Divisibility is judged with [`Scalar::cancel_tolerance`] relative to the
/// largest numerator coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredRational<T> {
    numer: Vec<EnergyPolynomial<T>>,
    denom_power: u32,
}

impl<T: Scalar> StructuredRational<T> {
    pub fn zero() -> Self {
        Self { numer: Vec::new(), denom_power: 0 }
    }

    pub fn one() -> Self {
        Self::new(vec![EnergyPolynomial::one()], 0)
    }

    /// `numer[i]` is the coefficient of `y^i`.
    pub fn new(numer: Vec<EnergyPolynomial<T>>, denom_power: u32) -> Self {
        let mut r = Self::from_raw(numer, denom_power);
        r.canonicalize();
        r
    }

    /// `rows[i][j]` is the coefficient of `y^i ε^j`.
    pub fn from_rows(rows: &[&[f64]], denom_power: u32) -> Self {
        Self::new(rows.iter().map(|r| Polynomial::from_f64(r)).collect(), denom_power)
    }

    /// Polynomial in `y` with constant (ε-free) coefficients over `(1-y²)^d`.
    pub fn from_y_coeffs(coeffs: &[T], denom_power: u32) -> Self {
        Self::new(coeffs.iter().map(|&c| Polynomial::constant(c)).collect(), denom_power)
    }

    fn from_raw(mut numer: Vec<EnergyPolynomial<T>>, denom_power: u32) -> Self {
        while numer.last().is_some_and(|p| p.is_zero()) {
            numer.pop();
        }
        let denom_power = if numer.is_empty() { 0 } else { denom_power };
        Self { numer, denom_power }
    }

    pub fn numerator(&self) -> &[EnergyPolynomial<T>] {
        &self.numer
    }

    pub fn denom_power(&self) -> u32 {
        self.denom_power
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    /// Degree of the numerator in `y`.
    pub fn y_degree(&self) -> Option<usize> {
        self.numer.len().checked_sub(1)
    }

    /// Highest power of `ε` appearing in the numerator.
    pub fn energy_degree(&self) -> Option<usize> {
        self.numer.iter().filter_map(|p| p.degree()).max()
    }

    pub fn max_abs(&self) -> T {
        self.numer.iter().fold(T::zero(), |m, p| m.max(p.max_abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.numer.iter().all(|p| p.is_finite())
    }

    pub fn scale(&self, c: T) -> Self {
        Self::from_raw(self.numer.iter().map(|p| p.scale(c)).collect(), self.denom_power)
    }

    /// Same function with the numerator multiplied out to denominator power
    /// `self.denom_power + k`.
    fn lifted(&self, k: u32) -> Vec<EnergyPolynomial<T>> {
        let mut n = self.numer.clone();
        for _ in 0..k {
            n = times_one_minus_y2(&n);
        }
        n
    }

    fn canonicalize(&mut self) {
        let tol = T::cancel_tolerance() * self.max_abs();
        while self.denom_power > 0 && self.numer.len() > 2 {
            let (q, r0, r1) = divide_one_minus_y2(&self.numer);
            if r0.max_abs() > tol || r1.max_abs() > tol {
                break;
            }
            self.numer = q;
            self.denom_power -= 1;
        }
    }

    /// `dr/dy`.
    pub fn derivative(&self) -> Self {
        let d = self.denom_power;
        let dn: Vec<_> = self.numer.iter().enumerate().skip(1).map(|(i, p)| p.scale(T::lit(i as f64))).collect();
        if d == 0 {
            return Self::new(dn, 0);
        }
        // [N'(1-y²) + 2d y N] / (1-y²)^{d+1}
        let mut out = times_one_minus_y2(&dn);
        let two_d = T::lit(2.0 * d as f64);
        for (i, p) in self.numer.iter().enumerate() {
            if out.len() < i + 2 {
                out.resize(i + 2, Polynomial::zero());
            }
            out[i + 1] = out[i + 1].add_scaled(p, two_d);
        }
        Self::new(out, d + 1)
    }

    /// Numerator evaluated at `y`, as a polynomial in `ε`.
    pub fn numerator_at(&self, y: T) -> EnergyPolynomial<T> {
        self.numer.iter().rev().fold(Polynomial::zero(), |acc, p| acc.scale(y).add_scaled(p, T::one()))
    }

    /// Numerator at fixed `ε`, as a polynomial in `y`.
    pub fn numerator_at_energy(&self, eps: T) -> Polynomial<T> {
        Polynomial::new(self.numer.iter().map(|p| p.eval(eps)).collect())
    }

    pub fn eval(&self, y: T, eps: T) -> Result<T> {
        let q = T::one() - y * y;
        if self.denom_power > 0 && q.is_zero() {
            return Err(Error::SingularPoint(y.as_f64()));
        }
        Ok(self.numerator_at_energy(eps).eval(y) / q.powi(self.denom_power as i32))
    }

    /// Equality up to a relative tolerance on the cross-multiplied numerators.
    pub fn approx_eq(&self, other: &Self, rtol: T) -> bool {
        let d = self.denom_power.max(other.denom_power);
        let a = self.lifted(d - self.denom_power);
        let b = other.lifted(d - other.denom_power);
        let scale = a.iter().chain(b.iter()).fold(T::zero(), |m, p| m.max(p.max_abs()));
        let n = a.len().max(b.len());
        (0..n).all(|i| {
            let pa = a.get(i).cloned().unwrap_or_else(Polynomial::zero);
            let pb = b.get(i).cloned().unwrap_or_else(Polynomial::zero);
            (&pa - &pb).max_abs() <= rtol * scale
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U + Copy) -> StructuredRational<U> {
        StructuredRational::from_raw(self.numer.iter().map(|p| p.map(f)).collect(), self.denom_power)
    }

    fn combine(&self, other: &Self, c: T) -> Self {
        let d = self.denom_power.max(other.denom_power);
        let a = self.lifted(d - self.denom_power);
        let b = other.lifted(d - other.denom_power);
        let n = a.len().max(b.len());
        let zero = Polynomial::zero();
        let out = (0..n).map(|i| a.get(i).unwrap_or(&zero).add_scaled(b.get(i).unwrap_or(&zero), c)).collect();
        Self::new(out, d)
    }
}

/// `n · (1 - y²)`.
fn times_one_minus_y2<T: Scalar>(n: &[EnergyPolynomial<T>]) -> Vec<EnergyPolynomial<T>> {
    if n.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Polynomial::zero(); n.len() + 2];
    for (i, p) in n.iter().enumerate() {
        out[i] = out[i].add_scaled(p, T::one());
        out[i + 2] = out[i + 2].add_scaled(p, -T::one());
    }
    out
}

/// `n = (1 - y²) q + r0 + r1 y`.
fn divide_one_minus_y2<T: Scalar>(
    n: &[EnergyPolynomial<T>],
) -> (Vec<EnergyPolynomial<T>>, EnergyPolynomial<T>, EnergyPolynomial<T>) {
    let mut w = n.to_vec();
    let mut q = vec![Polynomial::zero(); n.len() - 2];
    for i in (2..n.len()).rev() {
        // (1 - y²)·c·y^{i-2} with c = -w_i cancels the y^i term
        let c = -&w[i];
        w[i - 2] = &w[i - 2] - &c;
        q[i - 2] = c;
    }
    (q, w[0].clone(), w[1].clone())
}

impl<T: Scalar> Add for &StructuredRational<T> {
    type Output = StructuredRational<T>;

    fn add(self, rhs: Self) -> StructuredRational<T> {
        self.combine(rhs, T::one())
    }
}

impl<T: Scalar> Sub for &StructuredRational<T> {
    type Output = StructuredRational<T>;

    fn sub(self, rhs: Self) -> StructuredRational<T> {
        self.combine(rhs, -T::one())
    }
}

impl<T: Scalar> Neg for &StructuredRational<T> {
    type Output = StructuredRational<T>;

    fn neg(self) -> StructuredRational<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Mul for &StructuredRational<T> {
    type Output = StructuredRational<T>;

    fn mul(self, rhs: Self) -> StructuredRational<T> {
        if self.is_zero() || rhs.is_zero() {
            return StructuredRational::zero();
        }
        let mut out = vec![Polynomial::zero(); self.numer.len() + rhs.numer.len() - 1];
        for (i, a) in self.numer.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.numer.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        StructuredRational::new(out, self.denom_power + rhs.denom_power)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = StructuredRational<f64>;

    fn y_over(c: f64, d: u32) -> R {
        R::from_rows(&[&[], &[c]], d)
    }

    #[test]
    fn additive_identity() {
        let a = R::from_rows(&[&[1.0, 2.0], &[0.5], &[0.0, -3.0]], 2);
        assert_eq!(&a + &R::zero(), a);
    }

    #[test]
    fn like_terms() {
        assert_eq!(&y_over(1.0, 1) + &y_over(1.0, 1), y_over(2.0, 1));
    }

    #[test]
    fn cross_multiplication() {
        // 1/(1-y²) + 1 = (2 - y²)/(1-y²)
        let a = R::from_rows(&[&[1.0]], 1);
        let s = &a + &R::one();
        assert_eq!(s, R::from_rows(&[&[2.0], &[], &[-1.0]], 1));
    }

    #[test]
    fn multiplicative_identity_and_square() {
        let a = y_over(3.0, 1);
        assert_eq!(&a * &R::one(), a);
        assert_eq!(&a * &a, R::from_rows(&[&[], &[], &[9.0]], 2));
    }

    #[test]
    fn cancellation_to_polynomial() {
        // (1-y²)(2 + y ε) / (1-y²)
        let n = R::from_rows(&[&[2.0], &[0.0, 1.0], &[-2.0], &[0.0, -1.0]], 1);
        assert_eq!(n.denom_power(), 0);
        assert_eq!(n, R::from_rows(&[&[2.0], &[0.0, 1.0]], 0));
        let prod = &n * &R::one();
        assert_eq!(prod.denom_power(), 0);
    }

    #[test]
    fn derivative_by_hand() {
        assert_eq!(y_over(1.0, 0).derivative(), R::one());
        // d/dy 3y/(1-y²) = 3(1+y²)/(1-y²)²
        let d = y_over(3.0, 1).derivative();
        assert!(d.approx_eq(&R::from_rows(&[&[3.0], &[], &[3.0]], 2), 1e-15));
        assert_eq!(d.denom_power(), 2);
    }

    #[test]
    fn evaluation() {
        assert_eq!(R::one().eval(0.3, 7.0).unwrap(), 1.0);
        assert!((y_over(3.0, 1).eval(0.5, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(y_over(3.0, 1).eval(1.0, 0.0), Err(Error::SingularPoint(_))));
        assert!(matches!(y_over(3.0, 1).eval(-1.0, 0.0), Err(Error::SingularPoint(_))));
        // polynomial: fine at the pole location
        assert_eq!(y_over(3.0, 0).eval(1.0, 0.0).unwrap(), 3.0);
    }

    #[test]
    fn energy_and_y_evaluation_agree() {
        let r = R::from_rows(&[&[1.0, -1.0], &[0.2], &[0.0, 0.0, 3.0]], 1);
        let (y, e) = (0.4, -1.3);
        let v = r.eval(y, e).unwrap();
        let via_y = r.numerator_at(y).eval(e) / (1.0 - y * y);
        let via_e = r.numerator_at_energy(e).eval(y) / (1.0 - y * y);
        assert!((v - via_y).abs() < 1e-14 && (v - via_e).abs() < 1e-14);
        assert_eq!(r.energy_degree(), Some(2));
        assert_eq!(r.y_degree(), Some(2));
    }
}
