use std::ops::{Add, Mul, Neg, Sub};

use crate::Scalar;

/// Dense univariate polynomial; `coeffs[k]` multiplies `x^k`.
///
/// Always trimmed: the last stored coefficient is nonzero, and the zero
/// polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// Polynomial in the dimensionless energy `ε`.
pub type EnergyPolynomial<T> = Polynomial<T>;

impl<T: Scalar> Polynomial<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `c·x^k`
    pub fn monomial(k: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_f64(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::lit(c)).collect())
    }

    /// Builds `lead · Π (x - r)` from its roots.
    pub fn from_roots(roots: &[T], lead: T) -> Self {
        let mut p = Self::constant(lead);
        for &r in roots {
            p = &p * &Self::new(vec![-r, T::one()]);
        }
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().copied().unwrap_or_else(T::zero)
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    /// Value and first derivative by a single Horner pass.
    pub fn eval_with_derivative(&self, x: T) -> (T, T) {
        let mut p = T::zero();
        let mut dp = T::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// `(p(x), p'(x))` divided by `max(1, |x|)^deg`, so that large arguments
    /// of high-degree polynomials stay finite. The sign and the ratio
    /// `p/p'` are unchanged.
    pub fn eval_scaled(&self, x: T) -> (T, T) {
        let n = match self.degree() {
            None => return (T::zero(), T::zero()),
            Some(n) => n,
        };
        if x.abs() <= T::one() {
            return self.eval_with_derivative(x);
        }
        // p(x)/x^n = Σ a_k z^{n-k} with z = 1/x
        let z = x.recip();
        let mut p = T::zero();
        let mut dq = T::zero();
        for &c in &self.coeffs {
            dq = dq * z + p;
            p = p * z + c;
        }
        // d/dx [x^n q(1/x)] / x^n = n q(z)/x - q'(z) z²
        let dp = T::lit(n as f64) * p * z - dq * z * z;
        let sign = if x < T::zero() && n % 2 == 1 { -T::one() } else { T::one() };
        (p * sign, dp * sign)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * T::lit(k as f64)).collect())
    }

    pub fn scale(&self, c: T) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Divides by the largest coefficient magnitude; returns the divisor.
    pub fn normalized(&self) -> (Self, T) {
        let m = self.max_abs();
        if m.is_zero() {
            return (self.clone(), T::one());
        }
        (self.scale(m.recip()), m)
    }

    /// Euclidean division `self = q·d + r`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return (Self::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); r.len() - dn];
        let lead = d.leading();
        for i in (0..q.len()).rev() {
            let c = r[i + dn] / lead;
            q[i] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j] - c * dj;
            }
            r[i + dn] = T::zero();
        }
        r.truncate(dn);
        (Self::new(q), Self::new(r))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub(crate) fn add_scaled(&self, other: &Self, c: T) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + c * other.coeff(k)).collect())
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        self.add_scaled(rhs, T::one())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        self.add_scaled(rhs, -T::one())
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        self.scale(-T::one())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }
}
