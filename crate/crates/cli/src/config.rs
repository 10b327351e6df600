//! Flags, the optional key-value config file and their resolution into a
//! validated run configuration.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::Context;
use clap::{Args, ValueEnum};
use scarf_core::aim::{default_grid, grid, PairKind, Window};
use scarf_core::{tra, Precision, ScarfParams};
use serde::{Deserialize, Deserializer, Serialize};

use crate::Usage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Aim,
    Tra,
    Both,
}

impl Method {
    pub fn aim(self) -> bool {
        self != Method::Tra
    }

    pub fn tra(self) -> bool {
        self != Method::Aim
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Every setting as given on the command line or in the config file; `None`
/// means "not given here".
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// Constant offset `V0`.
    #[arg(long = "V0", allow_negative_numbers = true)]
    #[serde(rename = "V0")]
    pub v0: Option<f64>,
    /// Wall coupling `V+` of `1/cos²`.
    #[arg(long = "Vplus", allow_negative_numbers = true)]
    #[serde(rename = "Vplus")]
    pub vplus: Option<f64>,
    /// Odd wall coupling `V-` of `sin/cos²`.
    #[arg(long = "Vminus", allow_negative_numbers = true)]
    #[serde(rename = "Vminus")]
    pub vminus: Option<f64>,
    /// Sine-bottom coupling `V1`.
    #[arg(long = "V1", allow_negative_numbers = true)]
    #[serde(rename = "V1")]
    pub v1: Option<f64>,
    /// Well width.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: Option<f64>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// AIM iteration count, or a comma-separated list for `plateau`.
    #[arg(long)]
    #[serde(default, deserialize_with = "lenient_string")]
    pub iterations: Option<String>,
    /// AIM starting point in (-1, 1).
    #[arg(long, allow_negative_numbers = true)]
    pub y0: Option<f64>,
    /// Plateau grid `lo:hi:step`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Relative plateau tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// TRA basis size.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: Option<usize>,
    /// `double` or `extended` (double-double) AIM arithmetic.
    #[arg(long)]
    #[serde(default, deserialize_with = "parsed")]
    pub precision: Option<Precision>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Key-value (TOML) file with any of these settings.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// AIM characteristic pair: general, case1, case2 or regularized.
    #[arg(long)]
    #[serde(default, deserialize_with = "parsed")]
    pub pair: Option<PairKind>,
    /// AIM root window `lo:hi` in ε.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Comma-separated levels for `plateau`.
    #[arg(long)]
    #[serde(default, deserialize_with = "lenient_string")]
    pub levels: Option<String>,
    /// Level for `wavefunction`.
    #[arg(long)]
    pub level: Option<usize>,
    /// Sample count for `wavefunction` and `potential-curve`.
    #[arg(long)]
    pub samples: Option<usize>,
}

fn parsed<'de, D, T>(d: D) -> Result<Option<T>, D::Error>
where
    D: Deserializer<'de>,
    T: FromStr<Err = String>,
{
    Option::<String>::deserialize(d)?.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
}

/// Accepts `"1,2,5"`, `10` or `[1, 2, 5]`.
fn lenient_string<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        One(u64),
        Many(Vec<u64>),
    }
    Ok(Option::<Raw>::deserialize(d)?.map(|r| match r {
        Raw::Text(s) => s,
        Raw::One(n) => n.to_string(),
        Raw::Many(v) => v.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
    }))
}

impl Flags {
    /// Field-wise `self` over `file`.
    fn over(self, file: Flags) -> Flags {
        Flags {
            v0: self.v0.or(file.v0),
            vplus: self.vplus.or(file.vplus),
            vminus: self.vminus.or(file.vminus),
            v1: self.v1.or(file.v1),
            l: self.l.or(file.l),
            method: self.method.or(file.method),
            iterations: self.iterations.or(file.iterations),
            y0: self.y0.or(file.y0),
            grid: self.grid.or(file.grid),
            tol: self.tol.or(file.tol),
            n: self.n.or(file.n),
            precision: self.precision.or(file.precision),
            format: self.format.or(file.format),
            out: self.out.or(file.out),
            config: self.config,
            pair: self.pair.or(file.pair),
            window: self.window.or(file.window),
            levels: self.levels.or(file.levels),
            level: self.level.or(file.level),
            samples: self.samples.or(file.samples),
        }
    }

    /// Merges the config file named by `--config`, if any.
    pub fn with_file(self) -> anyhow::Result<Flags> {
        match &self.config {
            None => Ok(self),
            Some(path) => {
                let file = read_file(path)?;
                Ok(self.over(file))
            }
        }
    }

    pub fn has_potential(&self) -> bool {
        self.v0.is_some() || self.vplus.is_some() || self.vminus.is_some() || self.v1.is_some() || self.l.is_some()
    }
}

fn read_file(path: &Path) -> anyhow::Result<Flags> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).map_err(|e| Usage(format!("config {}: {}", path.display(), e.message())).into())
}

/// Validated settings of one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub params: ScarfParams,
    pub method: Method,
    pub iterations: Vec<usize>,
    pub y0: Option<f64>,
    pub grid: Option<Vec<f64>>,
    pub tol: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub precision: Precision,
    pub pair: Option<PairKind>,
    pub window: Window,
    pub levels: Vec<usize>,
    pub level: usize,
    pub samples: usize,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub const DEFAULT_ITERATIONS: usize = 10;
pub const DEFAULT_N: usize = 10;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SAMPLES: usize = 201;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn list(s: &str, what: &str) -> anyhow::Result<Vec<usize>> {
    let items: Vec<&str> = s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
    if items.is_empty() {
        return Err(usage(format!("{what} must not be empty")));
    }
    items
        .iter()
        .map(|x| x.parse::<usize>().map_err(|_| usage(format!("{what}: `{x}` is not a nonnegative integer"))))
        .collect()
}

fn floats(s: &str, parts: usize, what: &str) -> anyhow::Result<Vec<f64>> {
    let v: Vec<f64> = s.split(':').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| {
        usage(format!("{what} `{s}` is not of the form {}", if parts == 3 { "lo:hi:step" } else { "lo:hi" }))
    })?;
    if v.len() != parts {
        return Err(usage(format!("{what} `{s}` needs {parts} fields")));
    }
    Ok(v)
}

impl RunConfig {
    pub fn resolve(f: Flags) -> anyhow::Result<RunConfig> {
        let params = ScarfParams::new(
            f.v0.unwrap_or(0.0),
            f.vplus.unwrap_or(0.0),
            f.vminus.unwrap_or(0.0),
            f.v1.unwrap_or(0.0),
            f.l.unwrap_or(1.0),
        )?;
        let iterations = match &f.iterations {
            None => vec![DEFAULT_ITERATIONS],
            Some(s) => list(s, "iterations")?,
        };
        if iterations.contains(&0) {
            return Err(usage("iterations must be at least 1"));
        }
        if let Some(y) = f.y0 {
            if !(y.abs() < 1.0) {
                return Err(usage(format!("y0 = {y} must lie inside (-1, 1)")));
            }
        }
        let grid = match &f.grid {
            None => None,
            Some(s) => {
                let v = floats(s, 3, "grid")?;
                Some(grid(v[0], v[1], v[2])?)
            }
        };
        let tol = f.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(usage(format!("tol must be positive, got {tol}")));
        }
        let n = f.n.unwrap_or(DEFAULT_N);
        if n == 0 || n > tra::MAX_N {
            return Err(usage(format!("N must be in 1..={}, got {n}", tra::MAX_N)));
        }
        let window = match &f.window {
            None => Window::default(),
            Some(s) => {
                let v = floats(s, 2, "window")?;
                if !(v[0] < v[1]) {
                    return Err(usage(format!("window `{s}` is empty")));
                }
                Window { lo: v[0], hi: v[1] }
            }
        };
        let levels = match &f.levels {
            None => vec![0],
            Some(s) => list(s, "levels")?,
        };
        let samples = f.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples < 2 {
            return Err(usage(format!("samples must be at least 2, got {samples}")));
        }
        Ok(RunConfig {
            params,
            method: f.method.unwrap_or(Method::Both),
            iterations,
            y0: f.y0,
            grid,
            tol,
            n,
            precision: f.precision.unwrap_or_default(),
            pair: f.pair,
            window,
            levels,
            level: f.level.unwrap_or(0),
            samples,
            format: f.format.unwrap_or(Format::Csv),
            out: f.out,
        })
    }

    /// The single iteration count of `spectrum` and `wavefunction`.
    pub fn iteration(&self) -> anyhow::Result<usize> {
        match self.iterations[..] {
            [t] => Ok(t),
            _ => Err(usage("this command takes a single iteration count")),
        }
    }

    /// Iterations of a plateau scan: a single `T` means `1..=T`.
    pub fn plateau_iterations(&self) -> Vec<usize> {
        match self.iterations[..] {
            [t] => (1..=t).collect(),
            _ => {
                let mut v = self.iterations.clone();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }

    pub fn plateau_grid(&self) -> Vec<f64> {
        self.grid.clone().unwrap_or_else(default_grid)
    }
}
