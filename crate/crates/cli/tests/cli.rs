use std::process::{Command, Output};

use scarf_core::published::*;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarf-spectrum")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a CSV report as `column -> cell` lookups.
struct Csv {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    comments: Vec<String>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        let mut comments = Vec::new();
        let mut lines = Vec::new();
        for l in text.lines() {
            match l.strip_prefix("# ") {
                Some(c) => comments.push(c.to_string()),
                None => lines.push(l),
            }
        }
        let columns = lines[0].split(',').map(String::from).collect();
        let rows = lines[1..].iter().map(|l| l.split(',').map(String::from).collect()).collect();
        Self { columns, rows, comments }
    }

    fn col(&self, name: &str) -> Vec<Option<f64>> {
        let i = self.columns.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].parse().ok()).collect()
    }

    fn text(&self, name: &str) -> Vec<String> {
        let i = self.columns.iter().position(|c| c == name).unwrap();
        self.rows.iter().map(|r| r[i].clone()).collect()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

const CASE1: [&str; 4] = ["--V1", "1", "--Vplus", "0.25"];

#[test]
fn table_three_configuration_reproduces_the_published_levels() {
    let mut args = vec!["spectrum", "--pair", "case1", "--y0", "0", "--iterations", "10", "--N", "10"];
    args.extend(CASE1);
    let csv = Csv::parse(&stdout(&args));
    let aim = csv.col("eps_aim");
    let tra = csv.col("eps_tra");
    for level in 0..10 {
        assert!(rel(aim[level].unwrap(), TABLE3_AIM[level]) < 1e-10, "AIM level {level}");
    }
    for level in 0..7 {
        assert!(rel(tra[level].unwrap(), TABLE3_TRA[level]) < 1e-10, "TRA level {level}");
    }
    // the truncation check flags the top levels
    assert!(csv.comments.iter().any(|c| c.starts_with("TRA levels [8, 9]")), "{:?}", csv.comments);
    let e = csv.col("E_tra")[0].unwrap();
    assert!(rel(e, TABLE3_TRA[0] * std::f64::consts::PI.powi(2) / 2.0) < 1e-15);
}

#[test]
fn table_four_configuration_reproduces_the_published_levels() {
    let csv = Csv::parse(&stdout(&["spectrum", "--V1", "1", "--method", "tra"]));
    assert!(!csv.columns.contains(&"eps_aim".to_string()));
    let tra = csv.col("eps_tra");
    for level in 0..7 {
        assert!(rel(tra[level].unwrap(), TABLE4_TRA[level]) < 1e-11, "level {level}");
    }
    let csv = Csv::parse(&stdout(&["spectrum", "--V1", "1", "--method", "aim", "--y0", "-0.1"]));
    for level in 0..6 {
        assert!(rel(csv.col("eps_aim")[level].unwrap(), TABLE4_AIM[level][0]) < 1e-10, "level {level}");
    }
}

#[test]
fn solvable_limit_is_flagged_exact() {
    let csv = Csv::parse(&stdout(&["spectrum", "--Vplus", "0.7", "--Vminus", "0.2", "--V0", "1.5", "--L", "1.3"]));
    let flags = csv.text("flag");
    assert!(flags.len() >= 10);
    for (level, f) in flags.iter().take(10).enumerate() {
        assert_eq!(f, "exact", "level {level}");
    }
    let json: Value =
        serde_json::from_str(&stdout(&["spectrum", "--Vplus", "0.7", "--format", "json", "--method", "tra"])).unwrap();
    assert_eq!(json["diagnostics"]["exact"], true);
}

#[test]
fn csv_numbers_carry_at_least_fifteen_significant_digits() {
    let csv = Csv::parse(&stdout(&["spectrum", "--V1", "1"]));
    for cell in csv.rows.iter().flat_map(|r| r[1..].iter()).filter(|c| !c.is_empty()) {
        let mantissa = cell.split('e').next().unwrap().replace(['-', '.'], "");
        assert!(mantissa.len() >= 15, "{cell}");
    }
}

#[test]
fn json_report_has_the_three_sections() {
    let v: Value = serde_json::from_str(&stdout(&["spectrum", "--V1", "1", "--format", "json"])).unwrap();
    assert_eq!(v["params"]["params"]["v1"], 1.0);
    assert_eq!(v["params"]["N"], 10);
    assert_eq!(v["results"].as_array().unwrap().len(), 11);
    assert!(rel(v["results"][0]["eps_tra"].as_f64().unwrap(), TABLE4_TRA[0]) < 1e-15);
    assert!(v["diagnostics"]["aim"]["root_finding"]["degree"].as_u64().unwrap() == 11);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "V1 = 1\nVplus = 0.25\nN = 5\nmethod = \"tra\"\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file = Csv::parse(&stdout(&["spectrum", "--config", p]));
    assert_eq!(from_file.rows.len(), 5);
    let overridden = Csv::parse(&stdout(&["spectrum", "--config", p, "--N", "10"]));
    assert_eq!(overridden.rows.len(), 10);
    assert!(rel(overridden.col("eps_tra")[1].unwrap(), TABLE3_TRA[1]) < 1e-12);

    std::fs::write(&path, "V1 = 1\nunknown = 3\n").unwrap();
    assert_eq!(run(&["spectrum", "--config", p]).status.code(), Some(2));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for f in [&a, &b] {
        let mut args = vec!["plateau", "--iterations", "3,6", "--grid", "-0.5:0.5:0.1", "--levels", "0,1", "--out"];
        args.push(f.to_str().unwrap());
        args.extend(CASE1);
        assert!(stdout(&args).is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ta.is_empty());
    assert_eq!(ta, tb);
}

#[test]
fn exit_codes() {
    let bad = run(&["spectrum", "--Vminus", "-1"]);
    assert_eq!(bad.status.code(), Some(2));
    let line = String::from_utf8(bad.stderr).unwrap();
    assert_eq!(line.trim().lines().count(), 1);
    let v: Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["error"], "validation");

    assert_eq!(run(&["spectrum", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--precision", "quad"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--y0", "1.0"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--N", "0"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--iterations", "3,4"]).status.code(), Some(2));
    assert_eq!(run(&["plateau", "--levels", ""]).status.code(), Some(2));
    assert_eq!(run(&["potential-curve", "--samples", "1"]).status.code(), Some(2));

    let none = run(&["spectrum", "--V1", "1", "--method", "aim", "--window", "1000:1001"]);
    assert_eq!(none.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&none.stderr).unwrap();
    assert_eq!(v["error"], "numerical");

    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_one_recommends_the_origin() {
    let out = stdout(&["tables", "table1"]);
    let csv = Csv::parse(&out);
    assert!(csv.comments.iter().any(|c| c.starts_with("recommended y0 for level 0: 0 ")), "{:?}", csv.comments);
    // rows up to 10 iterations agree with the printed digits away from y0 = ±0.9
    let it = csv.col("iteration");
    let y0 = csv.col("y0");
    let lv = csv.col("level");
    let diff = csv.col("difference");
    for i in 0..csv.rows.len() {
        if it[i].unwrap() <= 5.0
            && diff[i].is_some()
            && !(lv[i] == Some(1.0) && it[i] == Some(3.0) && y0[i] == Some(0.1))
        {
            let tol = if lv[i] == Some(0.0) { 1e-8 } else { 1e-6 };
            assert!(diff[i].unwrap() <= tol, "row {:?}", csv.rows[i]);
        }
    }
    assert_eq!(run(&["tables", "table1", "--V1", "2"]).status.code(), Some(2));
}

#[test]
fn table_two_matches_through_ten_iterations() {
    let csv = Csv::parse(&stdout(&["tables", "table2"]));
    let it = csv.col("iteration");
    for (i, d) in csv.col("difference").iter().enumerate() {
        if it[i].unwrap() <= 10.0 {
            assert!(d.unwrap() <= 1e-12, "row {:?}", csv.rows[i]);
        }
    }
}

#[test]
fn tables_three_and_four_report_the_truncation_edge() {
    let v: Value = serde_json::from_str(&stdout(&["tables", "table4", "--format", "json"])).unwrap();
    let entries: Vec<&str> =
        v["diagnostics"]["mismatches"].as_array().unwrap().iter().map(|m| m["entry"].as_str().unwrap()).collect();
    assert!(entries.iter().all(|e| e.starts_with("TRA level") || e.starts_with("AIM level 9")), "{entries:?}");
    let csv = Csv::parse(&stdout(&["tables", "table3"]));
    assert_eq!(csv.rows.len(), 10);
}

#[test]
fn wavefunction_columns() {
    let csv = Csv::parse(&stdout(&["wavefunction", "--V1", "1", "--samples", "401"]));
    let overlap: f64 = csv.comments.iter().find_map(|c| c.strip_prefix("overlap = ")).unwrap().parse().unwrap();
    assert!(overlap >= 0.999999, "{overlap}");
    for col in ["psi_aim", "psi_tra"] {
        let v = csv.col(col);
        assert_eq!(v[0], Some(0.0));
        assert_eq!(*v.last().unwrap(), Some(0.0));
        // unit norm by the trapezoidal rule
        let h = 1.0 / 400.0;
        let norm: f64 = v.iter().map(|x| x.unwrap().powi(2)).sum::<f64>() * h;
        assert!((norm - 1.0).abs() < 1e-12);
    }
    assert_eq!(run(&["wavefunction", "--V1", "1", "--level", "10", "--N", "10"]).status.code(), Some(2));
    assert_eq!(run(&["wavefunction", "--V1", "1", "--level", "30", "--method", "aim"]).status.code(), Some(2));
}

#[test]
fn potential_curve_samples() {
    let csv = Csv::parse(&stdout(&[
        "potential-curve",
        "--V0",
        "1",
        "--V1",
        "1",
        "--Vplus",
        "0.25",
        "--Vminus",
        "0.1",
        "--samples",
        "101",
    ]));
    let x = csv.col("x");
    let v = csv.col("V");
    assert_eq!(x[50], Some(0.0));
    assert!((v[50].unwrap() - 1.25).abs() < 1e-15);
    assert!(x[0].unwrap() > -0.5 && x[100].unwrap() < 0.5);
    assert!(v[0].unwrap() > 100.0 && v[100].unwrap() > 100.0);

    let sym = Csv::parse(&stdout(&["potential-curve", "--Vplus", "0.4", "--samples", "21"]));
    let v = sym.col("V");
    for i in 0..21 {
        assert!((v[i].unwrap() - v[20 - i].unwrap()).abs() <= 1e-12 * v[i].unwrap().abs());
    }
}
