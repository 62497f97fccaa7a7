//! End-to-end runs of the `seclend` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use seclend::commands::{resolve_config, Overrides};
use seclend::csv_io::read_dataset;
use seclend::report::{BidReport, BidStatus, ValuationReport};
use seclend_core::sim::{build_portfolio_dataset, SeedRanges};
use seclend_core::valuation::{valuation_set, ValuationMode, ValuationParams};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seclend"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn write_config(dir: &TempDir, json: &str) -> String {
    let p = path(dir, "config.in.json");
    fs::write(&p, json).unwrap();
    p
}

fn read_json<T: serde::de::DeserializeOwned>(p: impl AsRef<Path>) -> T {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn simulate_default_shape() {
    let dir = TempDir::new().unwrap();
    let out = ok(&["simulate", "--out", &path(&dir, "")]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("100 securities x 252 days"), "{stdout}");
    let text = fs::read_to_string(dir.path().join("dataset.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("security_id,day,S,R,Q,B,L,I,H,delta"));
    assert_eq!(lines.count(), 100 * 252);
    let summary: serde_json::Value = read_json(dir.path().join("simulation.json"));
    assert_eq!(summary["config"]["simulation"]["seed"], 20_150_901);
    assert_eq!(summary["series"].as_array().unwrap().len(), 5);
}

#[test]
fn simulate_single_row() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_securities": 1, "n_days": 1}}"#);
    ok(&["simulate", "--config", &cfg, "--out", &path(&dir, "out")]);
    let text = fs::read_to_string(dir.path().join("out/dataset.csv")).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn simulate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_securities": 5, "n_days": 30}}"#);
    for (sub, seed) in [("a", "9"), ("b", "9"), ("c", "10")] {
        ok(&["simulate", "--config", &cfg, "--seed", seed, "--out", &path(&dir, sub)]);
    }
    let file = |sub: &str| fs::read(dir.path().join(sub).join("dataset.csv")).unwrap();
    assert_eq!(file("a"), file("b"));
    assert_ne!(file("a"), file("c"));
}

#[test]
fn simulated_file_values_like_the_in_memory_pipeline() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_securities": 8, "n_days": 60, "seed": 3}}"#);
    ok(&["simulate", "--config", &cfg, "--out", &path(&dir, "sim")]);
    let csv = path(&dir, "sim/dataset.csv");
    ok(&["value", "--config", &cfg, "--input", &csv, "--out", &path(&dir, "file")]);
    ok(&["value", "--config", &cfg, "--out", &path(&dir, "mem")]);

    let ranges = SeedRanges {
        n_securities: 8,
        n_days: 60,
        seed: 3,
        ..SeedRanges::default()
    };
    let ts = build_portfolio_dataset(&ranges).unwrap();
    assert_eq!(read_dataset(fs::File::open(&csv).unwrap()).unwrap(), ts);
    let set = valuation_set(&ts, &ValuationParams::default()).unwrap();

    let from_file: ValuationReport = read_json(dir.path().join("file/valuation.json"));
    let from_mem: ValuationReport = read_json(dir.path().join("mem/valuation.json"));
    for m in ValuationMode::ALL {
        let expected = set.value(m);
        assert_eq!(from_file.valuations[m.name()].annualized_fraction.to_bits(), expected.to_bits());
        assert_eq!(from_mem.valuations[m.name()].annualized_fraction.to_bits(), expected.to_bits());
        assert_eq!(from_file.daily.valuations[m.name()], set.get(m).daily);
    }
    assert_eq!(from_file.dataset, csv);
    assert_eq!(from_mem.dataset, "simulated");
}

#[test]
fn value_report_contents() {
    let dir = TempDir::new().unwrap();
    ok(&["value", "--out", &path(&dir, "")]);
    let v: ValuationReport = read_json(dir.path().join("valuation.json"));
    assert!(v.pecking_order_ok);
    assert_eq!(v.beta_sweep.len(), 51);
    assert!(v.beta_sweep.windows(2).all(|w| w[1].zero >= w[0].zero));
    // No transaction cost by default.
    assert_eq!(v.valuations["transaction"], v.valuations["beta"]);
    let beta = v.valuations["beta"];
    assert_eq!(beta.basis_points, seclend::report::to_bps(beta.annualized_fraction));
    assert!(v.combined.is_some());
    assert_eq!(v.daily.pnl.len(), 252);
    // Paying the break-even fee leaves no profit over the history.
    let total: f64 = v.daily.pnl.iter().sum();
    let scale: f64 = v.daily.pnl.iter().map(|p| p.abs()).sum();
    assert!(total.abs() < 1e-9 * scale, "{total}");
    assert_eq!(v.config.simulation.seed, 20_150_901);
}

#[test]
fn value_csv_format() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_securities": 4, "n_days": 20}, "format": "csv"}"#);
    ok(&["value", "--config", &cfg, "--out", &path(&dir, "out")]);
    let out = dir.path().join("out");
    let summary = fs::read_to_string(out.join("valuation.csv")).unwrap();
    assert!(summary.starts_with("valuation,annualized_fraction,basis_points,variance\n"));
    assert_eq!(summary.lines().count(), 1 + 7 + 1);
    assert_eq!(fs::read_to_string(out.join("daily.csv")).unwrap().lines().count(), 21);
    assert_eq!(fs::read_to_string(out.join("beta_sweep.csv")).unwrap().lines().count(), 52);
    let c: serde_json::Value = read_json(out.join("config.json"));
    assert_eq!(c["simulation"]["n_days"], 20);
}

#[test]
fn flags_override_the_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"seed": 1, "n_securities": 2, "n_days": 5}, "format": "csv"}"#);
    ok(&["value", "--config", &cfg, "--seed", "2", "--format", "json", "--out", &path(&dir, "o")]);
    let v: ValuationReport = read_json(dir.path().join("o/valuation.json"));
    assert_eq!(v.config.simulation.seed, 2);
    let o = Overrides {
        seed: Some(5),
        ..Overrides::default()
    };
    let c = resolve_config(Some(Path::new(&cfg)), &o).unwrap();
    assert_eq!((c.simulation.seed, c.simulation.n_days), (5, 5));
}

#[test]
fn bid_table() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"auction": {"bidders": [2, 5, 10]}}"#);
    ok(&["bid", "--config", &cfg, "--value", "0.004", "--out", &path(&dir, "")]);
    let b: BidReport = read_json(dir.path().join("bid.json"));
    assert_eq!(b.value_bps, 40.0);
    let uniform: Vec<f64> = b
        .rows
        .iter()
        .filter(|r| r.setting == "uniform")
        .map(|r| r.bid.unwrap())
        .collect();
    assert_eq!(uniform.len(), 3);
    assert!(uniform[0] < uniform[1] && uniform[1] < uniform[2]);
    let approx: Vec<_> = b.rows.iter().filter(|r| r.method == "approx").collect();
    assert!(!approx.is_empty() && approx.iter().all(|r| r.bid_bps == Some(20.0)));
    assert!(b.rows.iter().all(|r| r.status == BidStatus::Ok));
}

#[test]
fn bid_below_reserve_is_marked_not_failed() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"auction": {"context": {"reserve": 0.0045}}, "format": "csv"}"#);
    let out = ok(&["bid", "--config", &cfg, "--value", "0.004", "--out", &path(&dir, "")]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("below_reserve"));
    let table = fs::read_to_string(dir.path().join("bids.csv")).unwrap();
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.contains(",below_reserve,")), "{table}");
}

#[test]
fn bid_value_from_a_valuation_report() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_securities": 10, "n_days": 40}}"#);
    ok(&["value", "--config", &cfg, "--out", &path(&dir, "")]);
    let v: ValuationReport = read_json(dir.path().join("valuation.json"));
    let val = path(&dir, "valuation.json");
    ok(&["bid", "--config", &cfg, "--valuation", &val, "--out", &path(&dir, "")]);
    let b: BidReport = read_json(dir.path().join("bid.json"));
    assert_eq!(b.value, v.valuations["beta"].annualized_fraction);
    assert!(b.value_source.ends_with(":beta"));
    // Without a value or report, the dataset is valued directly.
    ok(&["bid", "--config", &cfg, "--out", &path(&dir, "direct")]);
    let d: BidReport = read_json(dir.path().join("direct/bid.json"));
    assert_eq!(d.value, b.value);
}

#[test]
fn report_bundle() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_securities": 6, "n_days": 30}}"#);
    ok(&["value", "--config", &cfg, "--out", &path(&dir, "")]);
    ok(&["bid", "--config", &cfg, "--value", "0.004", "--out", &path(&dir, "")]);
    ok(&[
        "report",
        "--config",
        &cfg,
        "--out",
        &path(&dir, "plots"),
        &path(&dir, "valuation.json"),
        &path(&dir, "bid.json"),
    ]);
    let plots = dir.path().join("plots");
    let daily = fs::read_to_string(plots.join("valuation_daily.csv")).unwrap();
    assert_eq!(daily.lines().count(), 31);
    assert!(daily.starts_with("day,zero,beta,transaction,conservative,beta_alternate,alternate,historical,pnl\n"));
    assert_eq!(fs::read_to_string(plots.join("valuation_beta_sweep.csv")).unwrap().lines().count(), 52);
    assert!(plots.join("bid_bids_by_bidders.csv").is_file());
    let curves: Vec<_> = (2..=10).map(|m| plots.join(format!("curve_uniform_m{m}.csv"))).collect();
    assert_eq!(curves.len(), 9);
    for c in &curves {
        let text = fs::read_to_string(c).unwrap();
        assert!(text.starts_with("x,bid,foc_residual\n"));
        assert_eq!(text.lines().count(), 102);
    }
    let manifest: serde_json::Value = read_json(plots.join("report.json"));
    assert_eq!(manifest["files"].as_array().unwrap().len(), 3 + 9);
    assert!(manifest["config"].is_object());
}

#[test]
fn report_usage_errors() {
    let dir = TempDir::new().unwrap();
    let out = run(&["report", "--out", &path(&dir, "")]);
    assert_eq!(out.status.code(), Some(2));
    let missing = path(&dir, "nope.json");
    let out = run(&["report", "--out", &path(&dir, ""), &missing]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.json"));
}

#[test]
fn validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_secs": 3}}"#);
    assert_eq!(run(&["simulate", "--config", &cfg, "--out", &path(&dir, "")]).status.code(), Some(2));
    let cfg = write_config(&dir, r#"{"valuation": {"discount": 0}}"#);
    assert_eq!(run(&["value", "--config", &cfg, "--out", &path(&dir, "")]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["bid", "--value", "-1"]).status.code(), Some(2));

    let bad = path(&dir, "bad.csv");
    fs::write(&bad, "security_id,day,S,R,Q,B,L,I,H,delta\n0,0,10,x,0.01,50,0,0,100,0.5\n").unwrap();
    let out = run(&["value", "--input", &bad, "--out", &path(&dir, "")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("column R"), "{err}");
}

#[test]
fn runtime_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "occupied");
    fs::write(&file, "").unwrap();
    let cfg = write_config(&dir, r#"{"simulation": {"n_securities": 1, "n_days": 2}}"#);
    let out = run(&["simulate", "--config", &cfg, "--out", &file]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("occupied"));
}
