use serde::Serialize;

use super::iterate::AimState;
use super::spectrum::{aim_spectrum, Window};
use crate::exec::Execution;
use crate::{Error, Result, Scalar};

/// Default scan grid: `y0 = -0.9, -0.89, …, 0.9`.
pub fn default_grid() -> Vec<f64> {
    (-90..=90).map(|k| k as f64 / 100.0).collect()
}

/// `lo:hi:step` inclusive grid.
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!("bad grid {lo}:{hi}:{step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    // snapped so that decimal steps give the decimal points, not sums' rounding
    let pts: Vec<f64> = (0..=n).map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12).collect();
    if pts.iter().any(|y| y.abs() >= 1.0) {
        return Err(Error::InvalidParameter(format!("grid {lo}:{hi}:{step} must lie inside (-1, 1)")));
    }
    Ok(pts)
}

/// Plateau of one level at one iteration count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlateauEntry {
    pub level: usize,
    pub iteration: usize,
    /// Value the plateau is measured against.
    pub reference: Option<f64>,
    /// Maximal runs of consecutive grid points within tolerance, as
    /// `(first y0, last y0)`.
    pub intervals: Vec<(f64, f64)>,
    pub width: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointFailure {
    pub iteration: usize,
    pub y0: f64,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlateauReport {
    pub levels: Vec<usize>,
    pub iterations: Vec<usize>,
    pub grid: Vec<f64>,
    pub tol: f64,
    /// `values[i][j][g]`: level `levels[i]` at `iterations[j]` and `grid[g]`.
    pub values: Vec<Vec<Vec<Option<f64>>>>,
    pub entries: Vec<PlateauEntry>,
    pub failures: Vec<PointFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recommendation {
    pub y0: f64,
    pub iteration: usize,
    pub interval: (f64, f64),
    pub warning: Option<String>,
}

impl PlateauReport {
    pub fn entry(&self, level: usize, iteration: usize) -> Option<&PlateauEntry> {
        self.entries.iter().find(|e| e.level == level && e.iteration == iteration)
    }

    pub fn value(&self, level: usize, iteration: usize, y0_index: usize) -> Option<f64> {
        let i = self.levels.iter().position(|&l| l == level)?;
        let j = self.iterations.iter().position(|&t| t == iteration)?;
        self.values[i][j].get(y0_index).copied().flatten()
    }

    /// Starting point for `level`: midpoint of the widest plateau interval at
    /// the largest iteration count whose plateau is nonempty. Falling back to
    /// a smaller iteration count is reported as a warning.
    pub fn recommend_y0(&self, level: usize) -> Result<Recommendation> {
        let mut by_t: Vec<&PlateauEntry> = self.entries.iter().filter(|e| e.level == level).collect();
        if by_t.is_empty() {
            return Err(Error::InvalidParameter(format!("level {level} was not scanned")));
        }
        by_t.sort_by_key(|e| std::cmp::Reverse(e.iteration));
        let t_max = by_t[0].iteration;
        for e in &by_t {
            let best = e.intervals.iter().copied().max_by(|a, b| {
                let (wa, wb) = (a.1 - a.0, b.1 - b.0);
                wa.partial_cmp(&wb)
                    .expect("finite")
                    // on ties prefer the interval nearer the centre of the grid
                    .then_with(|| (b.0 + b.1).abs().partial_cmp(&(a.0 + a.1).abs()).expect("finite"))
            });
            if let Some(iv) = best {
                let warning = (e.iteration != t_max).then(|| {
                    format!("no plateau for level {level} at iteration {t_max}; using iteration {}", e.iteration)
                });
                return Ok(Recommendation {
                    y0: (0.5 * (iv.0 + iv.1) * 1e12).round() / 1e12,
                    iteration: e.iteration,
                    interval: iv,
                    warning,
                });
            }
        }
        Err(Error::NoRealRoots)
    }
}

/// Densest cluster of `values`: the point with most neighbours within
/// `tol` relative (ties go to the point nearest `y0 = 0`); returns the
/// median of that cluster.
fn cluster_reference(values: &[Option<f64>], grid: &[f64], tol: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = values.iter().zip(grid).filter_map(|(v, &y)| v.map(|v| (y, v))).collect();
    let mut best: Option<(usize, f64, Vec<f64>)> = None;
    for &(y, v) in &pts {
        let members: Vec<f64> = pts.iter().filter(|(_, w)| (w - v).abs() <= tol * v.abs()).map(|&(_, w)| w).collect();
        let better = match &best {
            None => true,
            Some((n, by, _)) => members.len() > *n || (members.len() == *n && y.abs() < by.abs()),
        };
        if better {
            best = Some((members.len(), y, members));
        }
    }
    let (_, _, mut members) = best?;
    members.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = members.len();
    Some(if n % 2 == 1 { members[n / 2] } else { 0.5 * (members[n / 2 - 1] + members[n / 2]) })
}

fn plateau_entry(level: usize, iteration: usize, values: &[Option<f64>], grid: &[f64], tol: f64) -> PlateauEntry {
    let reference = cluster_reference(values, grid, tol);
    let mut intervals = Vec::new();
    let mut points = 0;
    if let Some(r) = reference {
        let mut start: Option<usize> = None;
        for g in 0..=grid.len() {
            let ok = g < grid.len() && values[g].is_some_and(|v| (v - r).abs() <= tol * r.abs());
            if ok {
                points += 1;
                start.get_or_insert(g);
            } else if let Some(s) = start.take() {
                intervals.push((grid[s], grid[g - 1]));
            }
        }
    }
    let width = intervals.iter().map(|(a, b)| b - a).sum();
    PlateauEntry { level, iteration, reference, intervals, width, points }
}

/// Level values over `iterations × grid` and the plateau of each level.
///
/// `state` must hold at least `max(iterations) + 1` steps so that levels can
/// be checked for persistence. Failures at single points become gaps.
pub fn plateau_scan<T: Scalar>(
    state: &AimState<T>,
    levels: &[usize],
    iterations: &[usize],
    grid: &[f64],
    tol: f64,
    window: Window,
    exec: Execution,
) -> Result<PlateauReport> {
    if levels.is_empty() || iterations.is_empty() || grid.is_empty() {
        return Err(Error::InvalidParameter("plateau scan needs levels, iterations and a grid".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(&y) = grid.iter().find(|y| !(y.abs() < 1.0)) {
        return Err(Error::InvalidParameter(format!("grid point {y} is outside (-1, 1)")));
    }
    if let Some(&t) = iterations.iter().find(|&&t| t > state.iterations()) {
        return Err(Error::Index { index: t, max: state.iterations() });
    }
    let jobs: Vec<(usize, usize)> = (0..iterations.len()).flat_map(|j| (0..grid.len()).map(move |g| (j, g))).collect();
    let results = exec.map(&jobs, |&(j, g)| aim_spectrum(state, iterations[j], grid[g], window));

    let mut values = vec![vec![vec![None; grid.len()]; iterations.len()]; levels.len()];
    let mut failures = Vec::new();
    for (&(j, g), r) in jobs.iter().zip(results) {
        match r {
            Ok(s) => {
                for (i, &l) in levels.iter().enumerate() {
                    values[i][j][g] = s.levels.get(l).copied();
                }
            }
            Err(e) => failures.push(PointFailure { iteration: iterations[j], y0: grid[g], error: e.to_string() }),
        }
    }
    let entries = levels
        .iter()
        .enumerate()
        .flat_map(|(i, &l)| {
            let values = &values;
            iterations.iter().enumerate().map(move |(j, &t)| plateau_entry(l, t, &values[i][j], grid, tol))
        })
        .collect();
    Ok(PlateauReport {
        levels: levels.to_vec(),
        iterations: iterations.to_vec(),
        grid: grid.to_vec(),
        tol,
        values,
        entries,
        failures,
    })
}
