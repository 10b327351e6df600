use anyhow::Result;
use scarf_core::aim::*;
use scarf_core::published::*;
use scarf_core::{tra, Execution, Precision, Scalar, ScarfParams, TwoFloat};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Flags, RunConfig};
use crate::report::{Cell, Report};
use crate::Usage;

/// Relative agreement with the closed form that earns the `exact` flag.
const EXACT_TOL: f64 = 1e-10;
/// Relative change between `N` and `2N` above which a TRA level is reported
/// as unconverged.
const TRUNCATION_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
struct StartingPoint {
    y0: f64,
    source: &'static str,
    plateau: Option<Recommendation>,
}

struct AimPart {
    spectrum: AimSpectrum,
    start: StartingPoint,
    wave: Option<AimWavefunction>,
}

fn pair_kind(cfg: &RunConfig) -> PairKind {
    cfg.pair.unwrap_or_else(|| default_kind(&cfg.params))
}

fn state<T: Scalar>(cfg: &RunConfig, depth: usize) -> Result<AimState<T>> {
    Ok(aim_iterate(&make_pair::<T>(&cfg.params, pair_kind(cfg))?, depth, true)?)
}

fn aim_part_in<T: Scalar>(cfg: &RunConfig, t: usize, wave: Option<(usize, &[f64])>) -> Result<AimPart> {
    let st = state::<T>(cfg, t + 1)?;
    let start = match (cfg.y0, &cfg.grid) {
        (Some(y0), _) => StartingPoint { y0, source: "flag", plateau: None },
        (None, Some(grid)) => {
            let rep = plateau_scan(&st, &[0], &[t], grid, cfg.tol, cfg.window, Execution::default())?;
            let rec = rep.recommend_y0(0)?;
            StartingPoint { y0: rec.y0, source: "plateau", plateau: Some(rec) }
        }
        (None, None) => StartingPoint { y0: 0.0, source: "default", plateau: None },
    };
    let spectrum = aim_spectrum(&st, t, start.y0, cfg.window)?;
    let wave = match wave {
        None => None,
        Some((level, xs)) => {
            let eps = *spectrum.levels.get(level).ok_or_else(|| {
                Usage(format!("level {level} is beyond the {} AIM levels found", spectrum.levels.len()))
            })?;
            Some(aim_wavefunction(&st, t, eps, xs)?)
        }
    };
    Ok(AimPart { spectrum, start, wave })
}

fn aim_part(cfg: &RunConfig, t: usize, wave: Option<(usize, &[f64])>) -> Result<AimPart> {
    match cfg.precision {
        Precision::Double => aim_part_in::<f64>(cfg, t, wave),
        Precision::Extended => aim_part_in::<TwoFloat>(cfg, t, wave),
    }
}

fn plateau_in<T: Scalar>(
    cfg: &RunConfig,
    levels: &[usize],
    iterations: &[usize],
    grid: &[f64],
) -> Result<PlateauReport> {
    let depth = iterations.iter().max().copied().unwrap_or(1) + 1;
    let st = state::<T>(cfg, depth)?;
    Ok(plateau_scan(&st, levels, iterations, grid, cfg.tol, cfg.window, Execution::default())?)
}

fn run_plateau(cfg: &RunConfig, levels: &[usize], iterations: &[usize], grid: &[f64]) -> Result<PlateauReport> {
    match cfg.precision {
        Precision::Double => plateau_in::<f64>(cfg, levels, iterations, grid),
        Precision::Extended => plateau_in::<TwoFloat>(cfg, levels, iterations, grid),
    }
}

fn params_json(cfg: &RunConfig) -> Value {
    let mut v = serde_json::to_value(cfg).expect("serializable");
    v["effective_pair"] = json!(pair_kind(cfg));
    v
}

fn aim_diagnostics(report: &mut Report, cfg: &RunConfig, part: &AimPart) {
    report.diagnostic(
        "aim",
        json!({
            "iteration": part.spectrum.iteration,
            "pair": pair_kind(cfg),
            "precision": cfg.precision,
            "start": part.start,
            "roots": part.spectrum.roots,
            "root_finding": part.spectrum.diagnostics,
        }),
    );
    if !part.spectrum.diagnostics.non_persistent.is_empty() {
        report.summary.push(format!(
            "AIM roots {:?} do not persist to the next iteration and are not assigned levels",
            part.spectrum.diagnostics.non_persistent
        ));
    }
}

/// Levels that still move by more than [`TRUNCATION_TOL`] when `N` doubles.
fn unconverged(p: &ScarfParams, n: usize, eps: &[f64]) -> Result<Option<(usize, Vec<usize>)>> {
    let bigger = (2 * n).min(tra::MAX_N);
    if bigger == n {
        return Ok(None);
    }
    let e2 = tra::tra_spectrum(p, bigger)?;
    let moved = eps
        .iter()
        .zip(&e2)
        .enumerate()
        .filter(|(_, (a, b))| (*a - *b).abs() > TRUNCATION_TOL * a.abs())
        .map(|(i, _)| i)
        .collect();
    Ok(Some((bigger, moved)))
}

pub fn spectrum(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.params;
    let t = cfg.iteration()?;
    let aim = cfg.method.aim().then(|| aim_part(cfg, t, None)).transpose()?;
    let tra_eps = cfg.method.tra().then(|| tra::tra_spectrum(&p, cfg.n)).transpose()?;
    let exact = p.v1 == 0.0;

    let mut columns = vec!["level"];
    if aim.is_some() {
        columns.extend(["eps_aim", "E_aim"]);
    }
    if tra_eps.is_some() {
        columns.extend(["eps_tra", "E_tra"]);
    }
    if aim.is_some() && tra_eps.is_some() {
        columns.push("abs_diff");
    }
    if exact {
        columns.extend(["eps_exact", "flag"]);
    }
    let mut report = Report::new(params_json(cfg), &columns);

    let aim_levels: &[f64] = aim.as_ref().map_or(&[], |a| &a.spectrum.levels);
    let tra_levels: &[f64] = tra_eps.as_deref().unwrap_or(&[]);
    let rows = aim_levels.len().max(tra_levels.len());
    let mut flags = Vec::new();
    for level in 0..rows {
        let (a, t) = (aim_levels.get(level).copied(), tra_levels.get(level).copied());
        let mut row: Vec<Cell> = vec![level.into()];
        if aim.is_some() {
            row.extend([a.into(), a.map(|e| p.energy(e)).into()]);
        }
        if tra_eps.is_some() {
            row.extend([t.into(), t.map(|e| p.energy(e)).into()]);
        }
        if aim.is_some() && tra_eps.is_some() {
            row.push(a.zip(t).map(|(a, t)| (a - t).abs()).into());
        }
        if exact {
            let e = p.closed_spectrum_eps(level)?;
            let ok = [a, t].iter().flatten().all(|v| (v - e).abs() <= EXACT_TOL * e.abs().max(1.0));
            let flag = if ok { "exact" } else { "mismatch" };
            flags.push(flag);
            row.extend([e.into(), flag.into()]);
        }
        report.push(row);
    }

    if let Some(a) = &aim {
        aim_diagnostics(&mut report, cfg, a);
        report.header.push(format!("AIM: {t} iterations at y0 = {} ({})", a.start.y0, a.start.source));
    }
    if let Some(eps) = &tra_eps {
        report.header.push(format!("TRA: N = {}", cfg.n));
        let check = unconverged(&p, cfg.n, eps)?;
        if let Some((bigger, moved)) = &check {
            if !moved.is_empty() {
                report.summary.push(format!(
                    "TRA levels {moved:?} change by more than {TRUNCATION_TOL:e} relative between N = {} and N = {bigger}",
                    cfg.n
                ));
            }
        }
        report.diagnostic(
            "tra",
            json!({ "N": cfg.n, "check_N": check.as_ref().map(|c| c.0), "unconverged_levels": check.map(|c| c.1) }),
        );
    }
    if exact {
        report.diagnostic("exact", flags.iter().all(|f| *f == "exact"));
    }
    Ok(report)
}

pub fn plateau(cfg: &RunConfig) -> Result<Report> {
    if !cfg.method.aim() {
        return Err(Usage("plateau scans need the AIM method".into()).into());
    }
    let iterations = cfg.plateau_iterations();
    let grid = cfg.plateau_grid();
    let rep = run_plateau(cfg, &cfg.levels, &iterations, &grid)?;
    let mut report = Report::new(params_json(cfg), &["level", "iteration", "y0", "eps"]);
    for (i, &level) in rep.levels.iter().enumerate() {
        for (j, &t) in rep.iterations.iter().enumerate() {
            for (g, &y0) in rep.grid.iter().enumerate() {
                report.push(vec![level.into(), t.into(), y0.into(), rep.values[i][j][g].into()]);
            }
        }
    }
    plateau_summary(&mut report, &rep);
    Ok(report)
}

fn plateau_summary(report: &mut Report, rep: &PlateauReport) {
    for e in &rep.entries {
        let iv: Vec<String> = e.intervals.iter().map(|(a, b)| format!("[{a}, {b}]")).collect();
        report.summary.push(format!(
            "plateau level {} iteration {}: {} of {} points within {:e} of {}, intervals {}",
            e.level,
            e.iteration,
            e.points,
            rep.grid.len(),
            rep.tol,
            e.reference.map_or("no value".to_string(), |r| r.to_string()),
            if iv.is_empty() { "none".to_string() } else { iv.join(" ") }
        ));
    }
    let mut recs = Vec::new();
    for &level in &rep.levels {
        match rep.recommend_y0(level) {
            Ok(r) => {
                report.summary.push(format!(
                    "recommended y0 for level {level}: {} (iteration {}, interval [{}, {}])",
                    r.y0, r.iteration, r.interval.0, r.interval.1
                ));
                if let Some(w) = &r.warning {
                    report.warn(w.clone());
                }
                recs.push(json!({ "level": level, "recommendation": r }));
            }
            Err(e) => report.warn(format!("no plateau for level {level}: {e}")),
        }
    }
    for f in &rep.failures {
        report.summary.push(format!("no value at iteration {} y0 = {}: {}", f.iteration, f.y0, f.error));
    }
    report.diagnostic("plateaus", &rep.entries);
    report.diagnostic("recommended_y0", recs);
    report.diagnostic("failures", &rep.failures);
}

fn trapezoid(v: &[f64], h: f64) -> f64 {
    let n = v.len();
    h * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[n - 1]))
}

fn normalize(v: &mut [f64], h: f64) {
    let sq: Vec<f64> = v.iter().map(|x| x * x).collect();
    let norm = trapezoid(&sq, h).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

pub fn wavefunction(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.params;
    let t = cfg.iteration()?;
    let level = cfg.level;
    let half = p.l / 2.0;
    let h = p.l / (cfg.samples - 1) as f64;
    let xs: Vec<f64> =
        (0..cfg.samples).map(|i| if i + 1 == cfg.samples { half } else { -half + i as f64 * h }).collect();

    let aim = cfg.method.aim().then(|| aim_part(cfg, t, Some((level, &xs)))).transpose()?;
    let tra = match cfg.method.tra() {
        false => None,
        true => {
            if level >= cfg.n {
                return Err(Usage(format!("level {level} needs N > {level}, got N = {}", cfg.n)).into());
            }
            let sol = tra::TraSolution::solve(&p, cfg.n)?;
            let psi = tra::tra_wavefunction(&p, &sol.eigenvectors[level], &xs)?;
            Some((sol.eigenvalues[level], psi))
        }
    };

    let mut columns = vec!["x"];
    if aim.is_some() {
        columns.push("psi_aim");
    }
    if tra.is_some() {
        columns.push("psi_tra");
    }
    let mut report = Report::new(params_json(cfg), &columns);
    report.header.push(format!("level = {level}"));

    let mut psi_aim: Option<(Vec<Option<f64>>, Vec<f64>)> = None;
    if let Some(a) = &aim {
        let w = a.wave.as_ref().expect("requested");
        let mut dense: Vec<f64> = w.psi.iter().map(|v| v.unwrap_or(0.0)).collect();
        normalize(&mut dense, h);
        let gaps = w.psi.iter().filter(|v| v.is_none()).count();
        if gaps > 0 {
            report.warn(format!(
                "AIM wavefunction blocked by poles at y = {:?}; {gaps} samples left blank",
                w.blocking_poles
            ));
        }
        report.header.push(format!("eps_aim = {:.16e}", a.spectrum.levels[level]));
        report.diagnostic("aim_poles", json!({ "regular": w.regular_poles, "blocking": w.blocking_poles }));
        aim_diagnostics(&mut report, cfg, a);
        psi_aim = Some((w.psi.clone(), dense));
    }
    let mut psi_tra = tra.map(|(eps, mut v)| {
        normalize(&mut v, h);
        report.header.push(format!("eps_tra = {eps:.16e}"));
        v
    });
    if let (Some((_, a)), Some(t)) = (&psi_aim, &mut psi_tra) {
        let dot: Vec<f64> = a.iter().zip(t.iter()).map(|(x, y)| x * y).collect();
        let mut overlap = trapezoid(&dot, h);
        if overlap < 0.0 {
            t.iter_mut().for_each(|v| *v = -*v);
            overlap = -overlap;
        }
        report.header.push(format!("overlap = {overlap:.16e}"));
        report.diagnostic("overlap", overlap);
    }
    for (i, &x) in xs.iter().enumerate() {
        let mut row: Vec<Cell> = vec![x.into()];
        if let Some((raw, dense)) = &psi_aim {
            row.push(raw[i].map(|_| dense[i]).into());
        }
        if let Some(t) = &psi_tra {
            row.push(t[i].into());
        }
        report.push(row);
    }
    Ok(report)
}

pub fn potential_curve(cfg: &RunConfig) -> Result<Report> {
    let p = cfg.params;
    let n = cfg.samples;
    let h = p.l / (n + 1) as f64;
    let mut report = Report::new(params_json(cfg), &["x", "V"]);
    report.header.push(format!("open grid of {n} points strictly inside (-L/2, L/2)"));
    for (side, edge) in [("-L/2", p.vplus + p.vminus), ("+L/2", p.vplus - p.vminus)] {
        let limit = if edge > 0.0 {
            "+inf"
        } else if edge < 0.0 {
            "-inf"
        } else {
            "finite"
        };
        report.header.push(format!("V -> {limit} as x -> {side}"));
    }
    for i in 0..n {
        let x = -p.l / 2.0 + (i + 1) as f64 * h;
        report.push(vec![x.into(), p.potential_value(x)?.into()]);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Table {
    Table1,
    Table2,
    Table3,
    Table4,
}

struct Mismatches {
    tol: f64,
    /// Replaces `tol` in the summary when entries use their own tolerance.
    label: Option<String>,
    relative: bool,
    found: Vec<Value>,
}

impl Mismatches {
    fn new(tol: f64, relative: bool) -> Self {
        Self { tol, label: None, relative, found: Vec::new() }
    }

    /// Difference to the published value, recording it when beyond `tol`.
    fn check(&mut self, what: String, ours: Option<f64>, published: f64) -> Option<f64> {
        self.check_within(what, ours, published, self.tol)
    }

    fn check_within(&mut self, what: String, ours: Option<f64>, published: f64, tol: f64) -> Option<f64> {
        let ours = ours?;
        let d = (ours - published).abs();
        let d = if self.relative { d / published.abs() } else { d };
        if !(d <= tol) {
            self.found.push(json!({ "entry": what, "ours": ours, "published": published, "difference": d }));
        }
        Some(d)
    }

    fn finish(self, report: &mut Report) {
        let kind = if self.relative { "relative" } else { "absolute" };
        let tol = self.label.clone().unwrap_or_else(|| format!("{:e}", self.tol));
        if self.found.is_empty() {
            report.summary.push(format!("all compared entries match the published values within {tol} {kind}"));
        } else {
            for m in &self.found {
                report.summary.push(format!(
                    "mismatch {}: ours {} published {} ({kind} difference {:e})",
                    m["entry"].as_str().unwrap_or(""),
                    m["ours"],
                    m["published"],
                    m["difference"].as_f64().unwrap_or(f64::NAN)
                ));
            }
        }
        report.diagnostic("tolerance", json!({ "value": tol, "kind": kind }));
        report.diagnostic("mismatches", self.found);
    }
}

/// Settings of a table run: the published parameters with the flags'
/// numerical and output settings.
pub fn table_config(flags: Flags, params: ScarfParams, pair: PairKind) -> Result<RunConfig> {
    if flags.has_potential() {
        return Err(Usage("tables use the published parameter sets; potential flags are not accepted".into()).into());
    }
    let mut cfg = RunConfig::resolve(flags)?;
    cfg.params = params;
    cfg.pair = Some(pair);
    Ok(cfg)
}

pub fn tables(which: Table, flags: Flags) -> Result<(RunConfig, Report)> {
    match which {
        Table::Table1 => {
            let cfg = table_config(flags, case1(), PairKind::Case1)?;
            let rep = run_plateau(&cfg, &[0, 1], &TABLE1_ITERATIONS, &TABLE1_Y0)?;
            let mut report =
                Report::new(params_json(&cfg), &["level", "iteration", "y0", "eps", "published", "difference"]);
            report.header.push("ground and first excited level over starting points".into());
            // one unit in the last printed decimal: 8 decimals for ε0, 6 for ε1;
            // rows beyond 10 iterations are reported but not held to it
            let printed = [1e-8, 1e-6];
            let mut mism = Mismatches::new(printed[0], false);
            let mut late = Mismatches::new(printed[0], false);
            mism.label = Some("1e-8 for level 0 and 1e-6 for level 1".into());
            for (i, table) in [TABLE1_EPS0, TABLE1_EPS1].iter().enumerate() {
                for (j, &t) in TABLE1_ITERATIONS.iter().enumerate() {
                    for (g, &y0) in TABLE1_Y0.iter().enumerate() {
                        let ours = rep.values[i][j][g];
                        let what = format!("level {i} iteration {t} y0 {y0}");
                        let target = if t <= 10 { &mut mism } else { &mut late };
                        let d = target.check_within(what, ours, table[j][g], printed[i]);
                        report.push(vec![i.into(), t.into(), y0.into(), ours.into(), table[j][g].into(), d.into()]);
                    }
                }
            }
            if !late.found.is_empty() {
                report.summary.push(format!(
                    "{} entries beyond 10 iterations differ from the printed values; there the far-field roots and rounding dominate",
                    late.found.len()
                ));
            }
            report.diagnostic("beyond_ten_iterations", &late.found);
            mism.finish(&mut report);
            plateau_summary(&mut report, &rep);
            Ok((cfg, report))
        }
        Table::Table2 => {
            let cfg = table_config(flags, case1(), PairKind::Case1)?;
            let rep = run_plateau(&cfg, &[0], &TABLE2_ITERATIONS, &TABLE2_Y0)?;
            let mut report = Report::new(params_json(&cfg), &["iteration", "y0", "eps", "published", "difference"]);
            let mut mism = Mismatches::new(1e-12, false);
            for (j, &t) in TABLE2_ITERATIONS.iter().enumerate() {
                for (g, &y0) in TABLE2_Y0.iter().enumerate() {
                    let ours = rep.values[0][j][g];
                    let d = mism.check(format!("iteration {t} y0 {y0}"), ours, TABLE2_EPS0[j][g]);
                    report.push(vec![t.into(), y0.into(), ours.into(), TABLE2_EPS0[j][g].into(), d.into()]);
                }
            }
            mism.finish(&mut report);
            Ok((cfg, report))
        }
        Table::Table3 => {
            let mut cfg = table_config(flags, case1(), PairKind::Case1)?;
            cfg.y0 = Some(0.0);
            let t = cfg.iteration()?;
            let aim = aim_part(&cfg, t, None)?.spectrum.levels;
            let tra_eps = tra::tra_spectrum(&cfg.params, cfg.n)?;
            let mut report =
                Report::new(params_json(&cfg), &["level", "eps_aim", "published_aim", "eps_tra", "published_tra"]);
            let mut mism = Mismatches::new(1e-10, true);
            for level in 0..10 {
                let (a, e) = (aim.get(level).copied(), tra_eps.get(level).copied());
                mism.check(format!("AIM level {level}"), a, TABLE3_AIM[level]);
                mism.check(format!("TRA level {level}"), e, TABLE3_TRA[level]);
                report.push(vec![level.into(), a.into(), TABLE3_AIM[level].into(), e.into(), TABLE3_TRA[level].into()]);
            }
            report.header.push(format!("AIM: {t} iterations at y0 = 0; TRA: N = {}", cfg.n));
            mism.finish(&mut report);
            Ok((cfg, report))
        }
        Table::Table4 => {
            let cfg = table_config(flags, case2(), PairKind::Case2)?;
            let t = cfg.iteration()?;
            let mut aim = Vec::new();
            for &y0 in &TABLE4_Y0 {
                let c = RunConfig { y0: Some(y0), ..cfg.clone() };
                aim.push(aim_part(&c, t, None)?.spectrum.levels);
            }
            let tra_eps = tra::tra_spectrum(&cfg.params, cfg.n)?;
            let mut columns = vec!["level".to_string()];
            for y0 in TABLE4_Y0 {
                columns.push(format!("eps_aim[y0={y0}]"));
                columns.push(format!("published_aim[y0={y0}]"));
            }
            columns.extend(["eps_tra".into(), "published_tra".into()]);
            let refs: Vec<&str> = columns.iter().map(String::as_str).collect();
            let mut report = Report::new(params_json(&cfg), &refs);
            let mut mism = Mismatches::new(1e-10, true);
            for level in 0..10 {
                let mut row: Vec<Cell> = vec![level.into()];
                for (g, &y0) in TABLE4_Y0.iter().enumerate() {
                    let a = aim[g].get(level).copied();
                    mism.check(format!("AIM level {level} y0 {y0}"), a, TABLE4_AIM[level][g]);
                    row.extend([a.into(), TABLE4_AIM[level][g].into()]);
                }
                let e = tra_eps.get(level).copied();
                mism.check(format!("TRA level {level}"), e, TABLE4_TRA[level]);
                row.extend([e.into(), TABLE4_TRA[level].into()]);
                report.push(row);
            }
            report.header.push(format!("sine-bottom well; AIM: {t} iterations; TRA: N = {}", cfg.n));
            mism.finish(&mut report);
            Ok((cfg, report))
        }
    }
}
