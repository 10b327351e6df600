//! Tridiagonal representation of the wave operator in the Jacobi basis.
//!
//! With `ψ = Σ f_m φ_m(sin λx)` the Schrödinger equation becomes the
//! symmetric three-term recursion
//!
//! ```text
//! ε f_n = J_{n,n} f_n + J_{n,n-1} f_{n-1} + J_{n,n+1} f_{n+1}
//! J_{n,n}   = [n + (μ+ν+1)/2]² + u₀ + u₁ ⟨n|y|n⟩
//! J_{n,n±1} = u₁ ⟨n|y|n±1⟩
//! ```
//!
//! which, truncated at `N` terms, is an `N × N` symmetric tridiagonal
//! eigenproblem. Eigenvalues come from Sturm-count bisection, eigenvectors
//! from inverse iteration.

use serde::Serialize;

use crate::exec::Execution;
use crate::jacobi::{basis_all, y_matrix_element};
use crate::{Error, Result, ScarfParams};

/// Largest truncation accepted by [`build_wave_matrix`].
pub const MAX_N: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal matrix needs n >= 1 diagonal and n - 1 off-diagonal entries, got {} and {}",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("tridiagonal matrix entries must be finite".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Leading `k × k` principal submatrix.
    pub fn leading_minor(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.len() {
            return Err(Error::Index { index: k, max: self.len() });
        }
        Self::new(self.diag[..k].to_vec(), self.offdiag[..k - 1].to_vec())
    }

    /// `(T v)_i`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Number of eigenvalues strictly below `x` (signs of the `LDLᵀ` pivots).
    pub fn sturm_count(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt() * self.norm_bound().max(1.0);
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.len() {
            let e2 = if i == 0 { 0.0 } else { self.offdiag[i - 1] * self.offdiag[i - 1] };
            d = self.diag[i] - x - e2 / d;
            if d == 0.0 {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// `k`-th smallest eigenvalue by bisection to adjacent floats.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::Index { index: k, max: self.len() - 1 });
        }
        let (g_lo, g_hi) = self.gershgorin();
        let pad = f64::EPSILON * self.norm_bound().max(1.0) * 4.0;
        let (mut lo, mut hi) = (g_lo - pad, g_hi + pad);
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.eigenvalue(k).expect("k < n")).collect()
    }

    /// Solves `(T - σ) x = b` by Gaussian elimination with partial pivoting;
    /// exactly singular pivots are nudged to a tiny value.
    fn shifted_solve(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = f64::EPSILON * self.norm_bound().max(f64::MIN_POSITIVE);
        // row i of U holds u0 (diag), u1, u2 (two super-diagonals)
        let mut u0: Vec<f64> = self.diag.iter().map(|d| d - sigma).collect();
        let mut u1: Vec<f64> = self.offdiag.clone();
        u1.push(0.0);
        let mut u2 = vec![0.0; n];
        let mut low: Vec<f64> = self.offdiag.clone();
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if low[i].abs() > u0[i].abs() {
                // swap rows i and i+1
                let (a0, a1, a2) = (u0[i], u1[i], u2[i]);
                u0[i] = low[i];
                u1[i] = u0[i + 1];
                u2[i] = u1[i + 1];
                let m = a0 / u0[i];
                u0[i + 1] = a1 - m * u1[i];
                u1[i + 1] = a2 - m * u2[i];
                x.swap(i, i + 1);
                x[i + 1] -= m * x[i];
                low[i] = m;
            } else {
                if u0[i] == 0.0 {
                    u0[i] = tiny;
                }
                let m = low[i] / u0[i];
                u0[i + 1] -= m * u1[i];
                u1[i + 1] -= m * u2[i];
                x[i + 1] -= m * x[i];
                low[i] = m;
            }
        }
        if u0[n - 1] == 0.0 {
            u0[n - 1] = tiny;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            if i + 1 < n {
                s -= u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= u2[i] * x[i + 2];
            }
            x[i] = s / u0[i];
        }
        x
    }

    /// Unit eigenvector for eigenvalue `lambda` by inverse iteration,
    /// orthogonalized against `against`. The largest component is positive.
    pub fn eigenvector(&self, lambda: f64, against: &[&[f64]]) -> Vec<f64> {
        let n = self.len();
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
        for _ in 0..4 {
            for w in against {
                let d = dot(&v, w);
                for (vi, wi) in v.iter_mut().zip(*w) {
                    *vi -= d * wi;
                }
            }
            normalize(&mut v);
            v = self.shifted_solve(lambda, &v);
            normalize(&mut v);
        }
        for w in against {
            let d = dot(&v, w);
            for (vi, wi) in v.iter_mut().zip(*w) {
                *vi -= d * wi;
            }
        }
        normalize(&mut v);
        let big = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if big < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }

    /// `max_n |(T f)_n - λ f_n|`.
    pub fn residual(&self, lambda: f64, f: &[f64]) -> f64 {
        self.apply(f).iter().zip(f).map(|(tf, fi)| (tf - lambda * fi).abs()).fold(0.0, f64::max)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// Truncated wave-operator matrix in units of `λ²/2`.
pub fn build_wave_matrix(p: &ScarfParams, n: usize) -> Result<TridiagonalMatrix> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidParameter(format!("matrix size must be in 1..={MAX_N}, got {n}")));
    }
    let (mu, nu) = (p.mu, p.nu);
    let diag = (0..n)
        .map(|k| {
            let t = k as f64 + (mu + nu + 1.0) / 2.0;
            t * t + p.u0 + p.u1 * y_matrix_element(mu, nu, k, k)
        })
        .collect();
    let offdiag = (0..n - 1).map(|k| p.u1 * y_matrix_element(mu, nu, k, k + 1)).collect();
    TridiagonalMatrix::new(diag, offdiag)
}

pub fn tridiag_eigenvalues(t: &TridiagonalMatrix) -> Vec<f64> {
    t.eigenvalues()
}

pub fn tra_spectrum(p: &ScarfParams, n: usize) -> Result<Vec<f64>> {
    Ok(build_wave_matrix(p, n)?.eigenvalues())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraSolution {
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[level][m] = f_m` for that level.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl TraSolution {
    pub fn solve(p: &ScarfParams, n: usize) -> Result<Self> {
        let t = build_wave_matrix(p, n)?;
        let eigenvalues = t.eigenvalues();
        let scale = t.norm_bound().max(1.0);
        let mut eigenvectors: Vec<Vec<f64>> = Vec::with_capacity(n);
        for (k, &lambda) in eigenvalues.iter().enumerate() {
            let close: Vec<&[f64]> = (0..k)
                .filter(|&j| (eigenvalues[j] - lambda).abs() <= 1e-8 * scale)
                .map(|j| eigenvectors[j].as_slice())
                .collect();
            let v = t.eigenvector(lambda, &close);
            eigenvectors.push(v);
        }
        Ok(Self { n, eigenvalues, eigenvectors })
    }
}

/// Unit eigenvector `f_m` of the given level.
pub fn expansion_coefficients(p: &ScarfParams, n: usize, level: usize) -> Result<Vec<f64>> {
    if level >= n {
        return Err(Error::Index { index: level, max: n.saturating_sub(1) });
    }
    let t = build_wave_matrix(p, n)?;
    let lambda = t.eigenvalue(level)?;
    Ok(t.eigenvector(lambda, &[]))
}

/// `ψ(x) = Σ f_m φ_m(sin λx)`; normalized to `∫ψ² dx = Σ f_m² / λ`.
pub fn tra_wavefunction(p: &ScarfParams, coeffs: &[f64], xs: &[f64]) -> Result<Vec<f64>> {
    xs.iter()
        .map(|&x| {
            if x.abs() > p.l / 2.0 || x.is_nan() {
                return Err(Error::OutOfWell { x, half_width: p.l / 2.0 });
            }
            let y = (p.lambda * x).sin().clamp(-1.0, 1.0);
            let phi = basis_all(p, coeffs.len(), y)?;
            Ok(phi.iter().zip(coeffs).map(|(a, b)| a * b).sum())
        })
        .collect()
}

/// Truncation study: `eps[level][j]` is level `level` at `n_values[j]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub n_values: Vec<usize>,
    pub levels: Vec<usize>,
    pub eps: Vec<Vec<f64>>,
    /// `|ε(N) - ε(N_max)|`.
    pub diff_to_max: Vec<Vec<f64>>,
    /// `|ε(N_j) - ε(N_{j-1})|`, first entry zero.
    pub successive: Vec<Vec<f64>>,
}

impl ConvergenceStudy {
    /// Whether `level` moves by more than `rel_tol` (relative) between
    /// size `n` and the largest size studied.
    pub fn is_unconverged(&self, level: usize, n: usize, rel_tol: f64) -> Option<bool> {
        let li = self.levels.iter().position(|&l| l == level)?;
        let ni = self.n_values.iter().position(|&v| v == n)?;
        let e = self.eps[li][ni];
        Some(self.diff_to_max[li][ni] > rel_tol * e.abs().max(f64::MIN_POSITIVE))
    }
}

pub fn convergence_study(
    p: &ScarfParams,
    n_values: &[usize],
    levels: &[usize],
    exec: Execution,
) -> Result<ConvergenceStudy> {
    let need = levels.iter().max().map_or(1, |m| m + 1);
    if n_values.is_empty() || levels.is_empty() {
        return Err(Error::InvalidParameter("convergence study needs sizes and levels".into()));
    }
    if let Some(&bad) = n_values.iter().find(|&&n| n < need) {
        return Err(Error::InvalidParameter(format!("size {bad} is too small for level {}", need - 1)));
    }
    let mut sizes = n_values.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let spectra = exec.map(&sizes, |&n| tra_spectrum(p, n));
    let spectra: Vec<Vec<f64>> = spectra.into_iter().collect::<Result<_>>()?;
    let eps: Vec<Vec<f64>> = levels.iter().map(|&l| spectra.iter().map(|s| s[l]).collect()).collect();
    let diff_to_max = eps
        .iter()
        .map(|row| {
            let last = *row.last().expect("nonempty");
            row.iter().map(|e| (e - last).abs()).collect()
        })
        .collect();
    let successive = eps
        .iter()
        .map(|row| std::iter::once(0.0).chain(row.windows(2).map(|w| (w[1] - w[0]).abs())).collect())
        .collect();
    Ok(ConvergenceStudy { n_values: sizes, levels: levels.to_vec(), eps, diff_to_max, successive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn diagonal_matrix_sorts_its_diagonal() {
        let t = TridiagonalMatrix::new(vec![3.0, -1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(t.eigenvalues(), vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let e = 1.0 / (PI * PI);
        let t = TridiagonalMatrix::new(vec![1.0, 4.0], vec![e]).unwrap();
        let exact = (5.0 - (9.0 + 4.0 * e * e).sqrt()) / 2.0;
        assert!((t.eigenvalue(0).unwrap() - exact).abs() < 1e-15);
        assert!((exact - 0.9965820).abs() < 1e-7);
    }

    #[test]
    fn shape_validation() {
        assert!(TridiagonalMatrix::new(vec![], vec![]).is_err());
        assert!(TridiagonalMatrix::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagonalMatrix::new(vec![1.0, f64::NAN], vec![0.0]).is_err());
    }

    #[test]
    fn sine_bottom_matrix() {
        let p = crate::published::case2();
        let t = build_wave_matrix(&p, 5).unwrap();
        for (k, d) in t.diag().iter().enumerate() {
            assert!((d - ((k + 1) * (k + 1)) as f64).abs() < 1e-14);
        }
        for e in t.offdiag() {
            assert!((e - 1.0 / (PI * PI)).abs() < 1e-16);
        }
    }

    #[test]
    fn single_entry_case_one() {
        let p = crate::published::case1();
        let t = build_wave_matrix(&p, 1).unwrap();
        assert!((t.diag()[0] - 1.0989858527942236).abs() < 1e-14);
    }

    #[test]
    fn no_coupling_is_diagonal() {
        let p = ScarfParams::new(0.3, 0.8, 0.2, 0.0, 1.4).unwrap();
        let t = build_wave_matrix(&p, 8).unwrap();
        assert!(t.offdiag().iter().all(|&e| e == 0.0));
        let f = expansion_coefficients(&p, 8, 3).unwrap();
        for (m, v) in f.iter().enumerate() {
            assert!((v - if m == 3 { 1.0 } else { 0.0 }).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvectors_satisfy_recursion() {
        let p = crate::published::case1();
        let sol = TraSolution::solve(&p, 12).unwrap();
        let t = build_wave_matrix(&p, 12).unwrap();
        for (l, f) in sol.eigenvectors.iter().enumerate() {
            assert!(t.residual(sol.eigenvalues[l], f) < 1e-10);
        }
    }

    #[test]
    fn ground_state_is_dominated_by_first_basis_function() {
        let f = expansion_coefficients(&crate::published::case2(), 10, 0).unwrap();
        assert!(f[0] > 0.99);
        assert!((f[1] / f[0] - (1.0 / (PI * PI)) / (1.0 - 4.0)).abs() < 2e-3);
    }

    #[test]
    fn wavefunction_vanishes_at_walls() {
        let p = crate::published::case1();
        let f = expansion_coefficients(&p, 10, 2).unwrap();
        let v = tra_wavefunction(&p, &f, &[-0.5, 0.5]).unwrap();
        assert_eq!(v, vec![0.0, 0.0]);
        assert!(tra_wavefunction(&p, &f, &[0.6]).is_err());
    }

    #[test]
    fn convergence_rows() {
        let p = crate::published::case2();
        let s = convergence_study(&p, &[20, 10], &[0, 9], Execution::Sequential).unwrap();
        assert_eq!(s.n_values, vec![10, 20]);
        assert!(s.diff_to_max[0][0] < 1e-12);
        assert_eq!(s.diff_to_max[1][1], 0.0);
        assert!(convergence_study(&p, &[5], &[7], Execution::Sequential).is_err());
    }
}
