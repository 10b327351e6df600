//! Asymptotic iteration method.
//!
//! The Schrödinger equation in `y = sin(λx)` is brought to the form
//! `g'' = k₀ g' + S₀ g` ([`pair`]), the pair is iterated symbolically
//! ([`iterate`]), and the energies are the real roots in `ε` of the
//! termination determinant `Δ_t` evaluated at a starting point `y0`
//! ([`spectrum`]). Iteration `t` yields `Δ_t`, which has `t + 1` roots.
//! [`plateau`] scans `y0` for the region where the roots are stable and
//! [`wavefunction`] rebuilds `ψ` from `S_t/k_t`.

pub mod iterate;
pub mod pair;
pub mod plateau;
pub mod spectrum;
pub mod wavefunction;

pub use iterate::{aim_iterate, delta_at, termination_delta, AimState};
pub use pair::{
    default_kind, default_pair, make_case1_pair, make_case2_pair, make_general_pair, make_pair, make_regularized_pair,
    CharacteristicPair, PairKind,
};
pub use plateau::{default_grid, grid, plateau_scan, PlateauEntry, PlateauReport, Recommendation};
pub use spectrum::{aim_spectrum, solve_aim, solve_aim_with, AimSpectrum, SpectrumDiagnostics, Window};
pub use wavefunction::{aim_wavefunction, AimWavefunction};
