//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use scarf_core::tra::TridiagonalMatrix;
use scarf_core::ScarfParams;

/// Eigenvalues of the tridiagonal matrix by a dense symmetric QR solver.
pub fn dense_eigenvalues(t: &TridiagonalMatrix) -> Vec<f64> {
    let n = t.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            t.diag()[i]
        } else if i + 1 == j {
            t.offdiag()[i]
        } else if j + 1 == i {
            t.offdiag()[j]
        } else {
            0.0
        }
    });
    let mut e: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(|a, b| a.partial_cmp(b).unwrap());
    e
}

/// Numerov shooting for `ψ'' = 2(V - E)ψ` on the open well, started at the
/// left wall. Only for potentials that stay bounded at the walls.
pub struct Numerov {
    pub params: ScarfParams,
    pub steps: usize,
}

impl Numerov {
    pub fn new(params: ScarfParams, steps: usize) -> Self {
        Self { params, steps }
    }

    fn grid(&self) -> (f64, f64) {
        let a = -self.params.l / 2.0;
        (a, self.params.l / self.steps as f64)
    }

    /// `ψ` on the `steps + 1` grid points for dimensionless energy `eps`.
    pub fn shoot(&self, eps: f64) -> Vec<f64> {
        let p = &self.params;
        let (a, h) = self.grid();
        let e = p.energy(eps);
        let f = |k: usize| {
            let x = a + k as f64 * h;
            let v = if k == 0 || k == self.steps { 0.0 } else { p.potential_value(x).unwrap() };
            2.0 * (v - e)
        };
        let h2 = h * h / 12.0;
        let mut psi = vec![0.0; self.steps + 1];
        psi[1] = h;
        let (mut f0, mut f1) = (f(0), f(1));
        for k in 1..self.steps {
            let f2 = f(k + 1);
            psi[k + 1] = (2.0 * psi[k] * (1.0 + 5.0 * h2 * f1) - psi[k - 1] * (1.0 - h2 * f0)) / (1.0 - h2 * f2);
            (f0, f1) = (f1, f2);
        }
        psi
    }

    /// Sign changes after the left wall, counting a crossing at the right wall.
    pub fn zeros(&self, eps: f64) -> usize {
        sign_changes(&self.shoot(eps)[1..])
    }

    /// Level `k` as the lowest energy whose solution has `k + 1` zeros.
    pub fn level(&self, k: usize, lo: f64, hi: f64) -> f64 {
        let (mut lo, mut hi) = (lo, hi);
        assert!(self.zeros(lo) <= k && self.zeros(hi) > k, "bracket does not contain level {k}");
        while hi - lo > 1e-15 * hi.abs().max(1.0) {
            let mid = 0.5 * (lo + hi);
            if self.zeros(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Level `k` with one Richardson step on the `h⁴` error.
pub fn numerov_level(p: ScarfParams, k: usize, steps: usize, lo: f64, hi: f64) -> f64 {
    let coarse = Numerov::new(p, steps).level(k, lo, hi);
    let fine = Numerov::new(p, 2 * steps).level(k, lo, hi);
    (16.0 * fine - coarse) / 15.0
}

pub fn sign_changes(v: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut n = 0;
    for &x in v {
        if x == 0.0 {
            continue;
        }
        if last != 0.0 && (x > 0.0) != (last > 0.0) {
            n += 1;
        }
        last = x;
    }
    n
}

/// Interior sign changes of a sampled profile, ignoring samples whose
/// magnitude is below `floor` relative to the largest one.
pub fn nodes(v: &[f64], floor: f64) -> usize {
    let m = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let kept: Vec<f64> = v.iter().copied().filter(|x| x.abs() > floor * m).collect();
    sign_changes(&kept)
}

/// `P_n^{(a,b)}(y)` from the terminating hypergeometric series.
pub fn jacobi_series(a: f64, b: f64, n: usize, y: f64) -> f64 {
    jacobi_series_with_size(a, b, n, y).0
}

/// Series value together with the sum of the absolute terms, which bounds
/// its rounding error.
pub fn jacobi_series_with_size(a: f64, b: f64, n: usize, y: f64) -> (f64, f64) {
    let z = (1.0 - y) / 2.0;
    let mut pref = 1.0;
    for k in 1..=n {
        pref *= (a + k as f64) / k as f64;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut size = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (n as f64 + a + b + 1.0 + kf) / ((a + 1.0 + kf) * (kf + 1.0)) * z;
        sum += term;
        size += term.abs();
    }
    (pref * sum, pref.abs() * size)
}

/// Case-1 iterates as printed, with `ω = 1 - ε`.
pub mod printed {
    pub fn k1(y: f64, eps: f64, a: f64, u1: f64) -> f64 {
        let (w, q) = (1.0 - eps, 1.0 - y * y);
        (3.0 + u1 * y * q + 4.0 * a * (2.0 + a) + 12.0 * y * y * (1.0 + a).powi(2) + q * w) / (q * q)
    }

    pub fn s1(y: f64, eps: f64, a: f64, u1: f64) -> f64 {
        let (w, q) = (1.0 - eps, 1.0 - y * y);
        (u1 * (1.0 + 4.0 * y * y * (1.0 + a)) + 4.0 * a * y * (5.0 + 4.0 * a) * (1.0 + a) + y * (5.0 + 4.0 * a) * w)
            / (q * q)
    }

    pub fn k2(y: f64, eps: f64, a: f64, u1: f64) -> f64 {
        let (w, q) = (1.0 - eps, 1.0 - y * y);
        let c = 5.0 + 4.0 * a;
        (2.0 * u1 * q * (1.0 + 4.0 * y * y * (1.0 + a))
            + y * c * (9.0 + 20.0 * a + 8.0 * a * a + 2.0 * y * y * (6.0 + 10.0 * a + 4.0 * a * a))
            + 2.0 * y * c * q * w)
            / q.powi(3)
    }

    pub fn s2(y: f64, eps: f64, a: f64, u1: f64) -> f64 {
        let (w, q) = (1.0 - eps, 1.0 - y * y);
        let y2 = y * y;
        (u1 * u1 * y2 * q
            + (8.0 + 12.0 * a + 4.0 * a * a + y2 * (27.0 + 36.0 * a + 12.0 * a * a)) * (4.0 * a + 4.0 * a * a + w)
            + u1 * y * (15.0 + 20.0 * a + 8.0 * a * a + y2 * (20.0 + 28.0 * a + 8.0 * a * a))
            + q * (2.0 * (2.0 * a * (1.0 + a) + u1 * y) * w - w * w))
            / q.powi(3)
    }
}

/// `∫ (1-y)^μ (1+y)^ν f(y) dy` with each endpoint factor absorbed by a
/// substitution: `1 - y = u^k` on `[0, 1]` and `1 + y = u^k` on `[-1, 0]`,
/// `k = 2/(exponent + 1)`, which leaves a smooth integrand in `u`.
pub fn weighted(mu: f64, nu: f64, f: impl Fn(f64) -> f64) -> f64 {
    let half = |e: f64, other: f64, sign: f64| {
        let k = 2.0 / (e + 1.0);
        quadrature::double_exponential::integrate(
            |u: f64| {
                let t = u.powf(k);
                let y = sign * (1.0 - t);
                // t^e dt = k u^{k(e+1)-1} du = k u du
                k * u * (2.0 - t).powf(other) * f(y)
            },
            0.0,
            1.0,
            1e-15,
        )
        .integral
    };
    half(mu, nu, 1.0) + half(nu, mu, -1.0)
}

pub fn simpson(f: &[f64], h: f64) -> f64 {
    let n = f.len() - 1;
    let inner: f64 = (1..n).map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * f[i]).sum();
    (f[0] + f[n] + inner) * h / 3.0
}

/// `|⟨a|b⟩| / (‖a‖ ‖b‖)` on the uniform grid.
pub fn overlap(a: &[f64], b: &[f64], h: f64) -> f64 {
    let dot = |u: &[f64], v: &[f64]| simpson(&u.iter().zip(v).map(|(x, y)| x * y).collect::<Vec<_>>(), h);
    dot(a, b).abs() / (dot(a, a) * dot(b, b)).sqrt()
}
