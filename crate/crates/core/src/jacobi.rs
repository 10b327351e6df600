//! Jacobi polynomials `P_n^{(μ,ν)}` and the orthonormal basis built on them.
//!
//! The weight is `(1 - y)^μ (1 + y)^ν` on `[-1, 1]`. The basis functions
//!
//! ```text
//! φ_m(y) = A_m (1 - y)^{(μ+1/2)/2} (1 + y)^{(ν+1/2)/2} P_m^{(μ,ν)}(y)
//! ```
//!
//! are orthonormal in `x` up to the factor `1/λ` coming from `dx = dy / (λ√(1-y²))`.

use libm::lgamma_r;

use crate::{Error, Result, ScarfParams};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiOrder {
    pub mu: f64,
    pub nu: f64,
    pub n: usize,
}

impl JacobiOrder {
    pub fn new(mu: f64, nu: f64, n: usize) -> Result<Self> {
        if !(mu > -1.0 && nu > -1.0) {
            return Err(Error::InvalidParameter(format!("Jacobi parameters must exceed -1, got ({mu}, {nu})")));
        }
        Ok(Self { mu, nu, n })
    }
}

/// `P_n(y)`, rejecting `y` outside `[-1, 1]`.
pub fn jacobi_eval(o: JacobiOrder, y: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&y) {
        return Err(Error::OutOfDomain(y));
    }
    Ok(jacobi_eval_unchecked(o, y))
}

/// `P_n(y)` for any real `y` (analytic continuation of the polynomial).
pub fn jacobi_eval_unchecked(o: JacobiOrder, y: f64) -> f64 {
    *jacobi_all(o.mu, o.nu, o.n, y).last().expect("nonempty")
}

/// `[P_0(y), …, P_n(y)]` by upward three-term recursion.
pub fn jacobi_all(mu: f64, nu: f64, n: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push((mu + nu + 2.0) * y / 2.0 + (mu - nu) / 2.0);
    let s = mu + nu;
    for k in 1..n {
        let kf = k as f64;
        let c = 2.0 * kf + s;
        let a1 = 2.0 * (kf + 1.0) * (kf + s + 1.0) * c;
        let a2 = (c + 1.0) * (c + 2.0) * c * y + (c + 1.0) * (mu * mu - nu * nu);
        let a3 = 2.0 * (kf + mu) * (kf + nu) * (c + 2.0);
        let next = (a2 * out[k] - a3 * out[k - 1]) / a1;
        out.push(next);
    }
    out
}

fn lgamma(x: f64) -> f64 {
    lgamma_r(x).0
}

/// Normalization `A_m` making `A_m P_m` orthonormal under the Jacobi weight.
pub fn basis_norm(mu: f64, nu: f64, m: usize) -> f64 {
    let s = mu + nu;
    let mf = m as f64;
    // (2m+s+1) Γ(m+s+1) is written as Γ(s+2) at m = 0 so that s = -1 is harmless
    let log_top =
        if m == 0 { lgamma(s + 2.0) } else { (2.0 * mf + s + 1.0).ln() + lgamma(mf + 1.0) + lgamma(mf + s + 1.0) };
    let log = log_top - (s + 1.0) * std::f64::consts::LN_2 - lgamma(mf + nu + 1.0) - lgamma(mf + mu + 1.0);
    (0.5 * log).exp()
}

/// `⟨n|y|m⟩` in the orthonormal Jacobi basis; zero unless `|n - m| ≤ 1`.
pub fn y_matrix_element(mu: f64, nu: f64, n: usize, m: usize) -> f64 {
    match n.abs_diff(m) {
        0 => y_diagonal(mu, nu, n),
        1 => y_offdiagonal(mu, nu, n.min(m)),
        _ => 0.0,
    }
}

fn y_diagonal(mu: f64, nu: f64, n: usize) -> f64 {
    let s = mu + nu;
    if n == 0 {
        // (ν² - μ²) / (s (s+2)) with the factor s cancelled
        return (nu - mu) / (s + 2.0);
    }
    let c = 2.0 * n as f64 + s;
    (nu * nu - mu * mu) / (c * (c + 2.0))
}

fn y_offdiagonal(mu: f64, nu: f64, n: usize) -> f64 {
    let s = mu + nu;
    let nf = n as f64;
    let c = 2.0 * nf + s;
    // (n+s+1)/(2n+s+1) tends to 1 at n = 0, s = -1
    let ratio = if n == 0 { 1.0 } else { (nf + s + 1.0) / (c + 1.0) };
    2.0 / (c + 2.0) * ((nf + 1.0) * (nf + mu + 1.0) * (nf + nu + 1.0) * ratio / (c + 3.0)).sqrt()
}

/// `(1 - y)^{(μ+1/2)/2} (1 + y)^{(ν+1/2)/2}`.
pub fn basis_weight(mu: f64, nu: f64, y: f64) -> f64 {
    (1.0 - y).max(0.0).powf((mu + 0.5) / 2.0) * (1.0 + y).max(0.0).powf((nu + 0.5) / 2.0)
}

/// `φ_m(y)`.
pub fn basis_eval(p: &ScarfParams, m: usize, y: f64) -> Result<f64> {
    Ok(basis_all(p, m + 1, y)?[m])
}

/// `[φ_0(y), …, φ_{count-1}(y)]`.
pub fn basis_all(p: &ScarfParams, count: usize, y: f64) -> Result<Vec<f64>> {
    if !(-1.0..=1.0).contains(&y) {
        return Err(Error::OutOfDomain(y));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let w = basis_weight(p.mu, p.nu, y);
    Ok(jacobi_all(p.mu, p.nu, count - 1, y)
        .into_iter()
        .enumerate()
        .map(|(m, pm)| basis_norm(p.mu, p.nu, m) * w * pm)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn order(mu: f64, nu: f64, n: usize) -> JacobiOrder {
        JacobiOrder::new(mu, nu, n).unwrap()
    }

    #[test]
    fn low_degrees() {
        assert_eq!(jacobi_eval(order(0.3, 2.0, 0), 0.7).unwrap(), 1.0);
        assert_eq!(jacobi_eval(order(0.5, 0.5, 1), 0.0).unwrap(), 0.0);
        let p1 = jacobi_eval(order(0.3, 1.2, 1), 0.4).unwrap();
        assert!((p1 - (3.5 * 0.4 / 2.0 + (0.3 - 1.2) / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn degree_two_against_hypergeometric_series() {
        // P_n(y) = (α+1)_n/n! Σ_k (-n)_k (n+α+β+1)_k / ((α+1)_k k!) ((1-y)/2)^k
        let (a, b, y) = (0.5, 0.5, 0.5);
        let z = (1.0 - y) / 2.0;
        let series = (a + 1.0) * (a + 2.0) / 2.0
            * (1.0
                + (-2.0) * (a + b + 3.0) / (a + 1.0) * z
                + (-2.0) * (-1.0) * (a + b + 3.0) * (a + b + 4.0) / ((a + 1.0) * (a + 2.0) * 2.0) * z * z);
        assert!((jacobi_eval(order(a, b, 2), y).unwrap() - series).abs() < 1e-14);
    }

    #[test]
    fn domain_checks() {
        assert_eq!(jacobi_eval(order(0.5, 0.5, 2), 1.5), Err(Error::OutOfDomain(1.5)));
        assert!(jacobi_eval_unchecked(order(0.5, 0.5, 2), 1.5).is_finite());
        assert!(JacobiOrder::new(-1.0, 0.0, 1).is_err());
    }

    #[test]
    fn norm_values() {
        assert!((basis_norm(0.5, 0.5, 0) - (2.0 / PI).sqrt()).abs() < 1e-15);
        // μ = ν = 1/2: P_m is a multiple of U_m, A_m = (m+1)... check via m = 1 closed form
        // A_1² = (s+3)/2^{s+1} Γ(2)Γ(s+2)/(Γ(ν+2)Γ(μ+2)) with s = 1
        let a1 = (4.0 / 4.0 * 2.0 / (1.5 * 0.5 * PI.sqrt() * 1.5 * 0.5 * PI.sqrt())).sqrt();
        assert!((basis_norm(0.5, 0.5, 1) - a1).abs() < 1e-14);
        assert!(basis_norm(-0.5, -0.5, 0).is_finite());
        assert!(basis_norm(-0.6, -0.4, 0).is_finite());
    }

    #[test]
    fn y_elements() {
        assert_eq!(y_matrix_element(0.5, 0.5, 3, 3), 0.0);
        assert!((y_matrix_element(0.5, 0.5, 0, 1) - 0.5).abs() < 1e-15);
        assert_eq!(y_matrix_element(0.5, 0.5, 4, 1), 0.0);
        assert_eq!(y_matrix_element(0.3, 1.1, 2, 3), y_matrix_element(0.3, 1.1, 3, 2));
        // μ + ν = 0: finite limit
        assert!(y_matrix_element(0.4, -0.4, 0, 0).is_finite());
        assert!(y_matrix_element(-0.5, -0.5, 0, 1).is_finite());
    }

    #[test]
    fn basis_values() {
        let p = ScarfParams::new(0.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!((basis_eval(&p, 0, 0.0).unwrap() - (2.0 / PI).sqrt()).abs() < 1e-15);
        assert_eq!(basis_eval(&p, 3, 1.0).unwrap(), 0.0);
        assert_eq!(basis_eval(&p, 3, -1.0).unwrap(), 0.0);
        for m in 0..6 {
            let near = basis_eval(&p, m, 1.0 - 1e-6).unwrap();
            let p1 = jacobi_eval(order(0.5, 0.5, m), 1.0).unwrap();
            assert_eq!(near.signum(), p1.signum());
        }
    }
}
