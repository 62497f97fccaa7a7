//! The four commands: `simulate`, `value`, `bid` and `report`.
//!
//! Each command writes its files into the output directory and returns
//! their paths. JSON reports embed the resolved config; in CSV mode the
//! config is written next to the tables as `config.json`.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use seclend_core::sim::{simulate_portfolio, PortfolioTimeSeries};
use seclend_core::valuation::value;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::csv_io::{read_dataset, write_dataset, write_table};
use crate::error::Error;
use crate::report::{curve_rows, uniform_bid_curves, BidReport, SimulationReport, ValuationReport};

/// Command-line values that override the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub input: Option<PathBuf>,
    pub value: Option<f64>,
}

/// Loads the config file (defaults when `None`), applies the overrides and
/// validates the result.
pub fn resolve_config(path: Option<&Path>, o: &Overrides) -> Result<RunConfig, Error> {
    let mut c = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = o.seed {
        c.simulation.seed = seed;
    }
    if let Some(out) = &o.out {
        c.out = out.clone();
    }
    if let Some(f) = o.format {
        c.format = f;
    }
    if let Some(input) = &o.input {
        c.input = Some(input.clone());
    }
    if let Some(v) = o.value {
        c.auction.value = Some(v);
    }
    if c.out.as_os_str().is_empty() {
        c.out = PathBuf::from(".");
    }
    c.validate()?;
    Ok(c)
}

fn out_path(c: &RunConfig, name: &str) -> Result<PathBuf, Error> {
    fs::create_dir_all(&c.out).map_err(|e| Error::io(&c.out, e))?;
    Ok(c.out.join(name))
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(c: &RunConfig, name: &str, doc: &T) -> Result<PathBuf, Error> {
    let path = out_path(c, name)?;
    let mut w = create(&path)?;
    serde_json::to_writer_pretty(&mut w, doc)?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

fn write_csv<I>(c: &RunConfig, name: &str, header: &[&str], rows: I) -> Result<PathBuf, Error>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let path = out_path(c, name)?;
    let w = create(&path)?;
    write_table(w, header, rows).map_err(|source| Error::Csv { path: path.clone(), source })?;
    Ok(path)
}

/// Reads a dataset CSV.
pub fn read_dataset_file(path: &Path) -> Result<PortfolioTimeSeries, Error> {
    if !path.exists() {
        return Err(Error::MissingInputs(vec![path.to_path_buf()]));
    }
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    read_dataset(BufReader::new(f)).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// The configured input dataset, or a simulated one. Returns the dataset,
/// its description and whether it was simulated.
pub fn load_dataset(c: &RunConfig) -> Result<(PortfolioTimeSeries, String, bool), Error> {
    match &c.input {
        Some(p) => Ok((read_dataset_file(p)?, p.display().to_string(), false)),
        None => Ok((simulate_portfolio(&c.simulation)?.series, "simulated".into(), true)),
    }
}

/// Simulates a dataset and writes `dataset.csv` plus a drift/volatility
/// summary (`simulation.json`, or `simulation.csv` with `config.json`).
pub fn cmd_simulate(c: &RunConfig) -> Result<(SimulationReport, Vec<PathBuf>), Error> {
    let ts = simulate_portfolio(&c.simulation)?.series;
    let path = out_path(c, "dataset.csv")?;
    let w = create(&path)?;
    write_dataset(&ts, w).map_err(|source| Error::Csv { path: path.clone(), source })?;
    let report = SimulationReport::new(c, &ts);
    let mut files = vec![path];
    match c.format {
        Format::Json => files.push(write_json(c, "simulation.json", &report)?),
        Format::Csv => {
            let opt = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
            let rows = report.series.iter().map(|s| {
                vec![
                    s.variable.clone(),
                    opt(s.drift_mean),
                    opt(s.drift_min),
                    opt(s.drift_max),
                    opt(s.vol_mean),
                    opt(s.vol_min),
                    opt(s.vol_max),
                ]
            });
            let header = [
                "variable",
                "drift_mean",
                "drift_min",
                "drift_max",
                "vol_mean",
                "vol_min",
                "vol_max",
            ];
            files.push(write_csv(c, "simulation.csv", &header, rows)?);
            files.push(write_json(c, "config.json", c)?);
        }
    }
    Ok((report, files))
}

/// Values the dataset: `valuation.json`, or `valuation.csv`, `daily.csv`,
/// `beta_sweep.csv` and `config.json`.
pub fn cmd_value(c: &RunConfig) -> Result<(ValuationReport, Vec<PathBuf>), Error> {
    let (ts, source, simulated) = load_dataset(c)?;
    let report = ValuationReport::new(c, &ts, &source, simulated)?;
    let files = match c.format {
        Format::Json => vec![write_json(c, "valuation.json", &report)?],
        Format::Csv => {
            let (header, rows) = report.daily_rows();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            vec![
                write_csv(
                    c,
                    "valuation.csv",
                    &["valuation", "annualized_fraction", "basis_points", "variance"],
                    report.summary_rows(),
                )?,
                write_csv(c, "daily.csv", &header, rows)?,
                write_csv(c, "beta_sweep.csv", &["discount", "zero", "zero_bps"], report.sweep_rows())?,
                write_json(c, "config.json", c)?,
            ]
        }
    };
    Ok((report, files))
}

/// Bidder's value: explicit, from a valuation report, or computed from the
/// dataset. Returns the value and a description of its source.
fn bidder_value(c: &RunConfig, valuation: Option<&Path>) -> Result<(f64, String), Error> {
    if let Some(x) = c.auction.value {
        return Ok((x, "explicit".into()));
    }
    let mode = c.auction.value_mode;
    if let Some(path) = valuation {
        let report: ValuationReport = read_artifact(path, "valuation")?;
        let entry = report.valuations.get(mode.name()).ok_or_else(|| Error::Artifact {
            path: path.to_path_buf(),
            reason: format!("no {} valuation", mode.name()),
        })?;
        return Ok((entry.annualized_fraction, format!("{}:{}", path.display(), mode.name())));
    }
    let (ts, source, _) = load_dataset(c)?;
    let x = value(&ts, &c.valuation, mode)?;
    Ok((x, format!("{source}:{}", mode.name())))
}

/// Bids in every setting: `bid.json`, or `bids.csv` and `config.json`.
pub fn cmd_bid(c: &RunConfig, valuation: Option<&Path>) -> Result<(BidReport, Vec<PathBuf>), Error> {
    let (x, source) = bidder_value(c, valuation)?;
    if !(x >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "{} valuation is negative ({x}); pass an explicit value",
            c.auction.value_mode.name()
        )));
    }
    let report = BidReport::new(c, x, &source)?;
    let files = match c.format {
        Format::Json => vec![write_json(c, "bid.json", &report)?],
        Format::Csv => vec![
            write_csv(c, "bids.csv", &BidReport::HEADER, report.table_rows())?,
            write_json(c, "config.json", c)?,
        ],
    };
    Ok((report, files))
}

fn read_artifact<T: serde::de::DeserializeOwned>(path: &Path, kind: &str) -> Result<T, Error> {
    let bad = |reason: String| Error::Artifact {
        path: path.to_path_buf(),
        reason,
    };
    if !path.is_file() {
        return Err(Error::MissingInputs(vec![path.to_path_buf()]));
    }
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    match doc.get("kind").and_then(|k| k.as_str()) {
        Some(k) if k == kind => serde_json::from_value(doc).map_err(|e| bad(e.to_string())),
        Some(k) => Err(bad(format!("expected a {kind} report, found {k}"))),
        None => Err(bad("not a report (no kind field)".into())),
    }
}

fn artifact_kind(path: &Path) -> Result<String, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Artifact {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    doc.get("kind")
        .and_then(|k| k.as_str())
        .map(str::to_string)
        .ok_or_else(|| Error::Artifact {
            path: path.to_path_buf(),
            reason: "not a report (no kind field)".into(),
        })
}

/// Manifest written by `report`.
#[derive(Debug, Serialize)]
struct ReportManifest<'a> {
    kind: &'static str,
    config: &'a RunConfig,
    artifacts: &'a [PathBuf],
    files: &'a [PathBuf],
}

/// Plot data from `value` and `bid` JSON reports: daily series and β sweep
/// of each valuation report, bids by bidder count of each bid report, and
/// the uniform bid curves over values for every configured bidder count.
/// Files are prefixed with the artifact's file stem; `report.json` lists
/// them together with the config.
pub fn cmd_report(c: &RunConfig, artifacts: &[PathBuf]) -> Result<Vec<PathBuf>, Error> {
    if artifacts.is_empty() {
        return Err(Error::Usage("report needs at least one artifact".into()));
    }
    let missing: Vec<PathBuf> = artifacts.iter().filter(|p| !p.is_file()).cloned().collect();
    if !missing.is_empty() {
        return Err(Error::MissingInputs(missing));
    }
    let mut files = Vec::new();
    for path in artifacts {
        let stem = path.file_stem().map_or("artifact".into(), |s| s.to_string_lossy().into_owned());
        match artifact_kind(path)?.as_str() {
            "valuation" => {
                let v: ValuationReport = read_artifact(path, "valuation")?;
                let (header, rows) = v.daily_rows();
                let header: Vec<&str> = header.iter().map(String::as_str).collect();
                files.push(write_csv(c, &format!("{stem}_daily.csv"), &header, rows)?);
                files.push(write_csv(
                    c,
                    &format!("{stem}_beta_sweep.csv"),
                    &["discount", "zero", "zero_bps"],
                    v.sweep_rows(),
                )?);
            }
            "bid" => {
                let b: BidReport = read_artifact(path, "bid")?;
                files.push(write_csv(
                    c,
                    &format!("{stem}_bids_by_bidders.csv"),
                    &["setting", "method", "bidders", "bid", "bid_bps"],
                    b.by_bidders_rows(),
                )?);
            }
            other => {
                return Err(Error::Artifact {
                    path: path.clone(),
                    reason: format!("no plot data for {other} reports"),
                })
            }
        }
    }
    for (label, curve) in uniform_bid_curves(c)? {
        files.push(write_csv(
            c,
            &format!("curve_{label}.csv"),
            &["x", "bid", "foc_residual"],
            curve_rows(&curve),
        )?);
    }
    let manifest = ReportManifest {
        kind: "report",
        config: c,
        artifacts,
        files: &files,
    };
    files.push(write_json(c, "report.json", &manifest)?);
    Ok(files)
}
