//! Run configuration, read from JSON.
//!
//! Every section and field is optional; omitted values take their defaults,
//! and unknown fields are rejected. Command-line flags override the file.

use std::fs;
use std::path::{Path, PathBuf};

use seclend_core::auction::{BidContext, ValueDistribution};
use seclend_core::sim::SeedRanges;
use seclend_core::valuation::{ValuationMode, ValuationParams};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Output format of the machine-readable reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Discount factors of the β sweep: `steps` points from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            from: 1.0,
            to: 0.95,
            steps: 51,
        }
    }
}

/// Settings of the `value` command beyond the valuation parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValueConfig {
    pub sweep: SweepConfig,
    /// Fee charged against the daily P&L; the `beta` valuation (break-even
    /// fee) when unset.
    pub paid_fee: Option<f64>,
    /// Simulated datasets averaged for the expected valuations; only used
    /// when the dataset is simulated rather than read from a file.
    pub n_paths: usize,
}

impl Default for ValueConfig {
    fn default() -> Self {
        Self {
            sweep: SweepConfig::default(),
            paid_fee: None,
            n_paths: 1,
        }
    }
}

/// Settings of the `bid` command. All values, reserves and bids are
/// annualized fractions of portfolio value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AuctionConfig {
    /// Bidder's value of the exclusive. When unset it is read from a
    /// valuation report or computed from the dataset.
    pub value: Option<f64>,
    /// Valuation used as the bidder's value when `value` is unset.
    pub value_mode: ValuationMode,
    /// Reserve, bidder count and beliefs, value weights and seller value.
    pub context: BidContext,
    /// Bidder counts of the by-M table.
    pub bidders: Vec<u32>,
    /// Upper end of the uniform value distribution.
    pub omega: f64,
    /// Log-normal value distribution parameters.
    pub lognormal_mu: f64,
    pub lognormal_sigma: f64,
    /// Value per unit of Irwin–Hall signal in the interdependent settings.
    pub signal_scale: f64,
}

impl Default for AuctionConfig {
    fn default() -> Self {
        Self {
            value: None,
            value_mode: ValuationMode::Beta,
            context: BidContext::default(),
            bidders: vec![2, 3, 5, 10],
            omega: 0.01,
            lognormal_mu: 0.004f64.ln(),
            lognormal_sigma: 0.5,
            signal_scale: 0.004,
        }
    }
}

impl AuctionConfig {
    pub fn uniform(&self) -> ValueDistribution {
        ValueDistribution::Uniform { omega: self.omega }
    }

    pub fn lognormal(&self) -> ValueDistribution {
        ValueDistribution::LogNormal {
            mu: self.lognormal_mu,
            sigma: self.lognormal_sigma,
        }
    }
}

/// Settings of the `report` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportConfig {
    /// Bidder counts of the bid curves over values.
    pub curve_bidders: Vec<u32>,
    /// Grid points per bid curve.
    pub curve_points: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            curve_bidders: (2..=10).collect(),
            curve_points: 101,
        }
    }
}

/// Complete configuration of a run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub simulation: SeedRanges,
    pub valuation: ValuationParams,
    pub value: ValueConfig,
    pub auction: AuctionConfig,
    pub report: ReportConfig,
    /// Dataset CSV read by `value` and `bid`; simulated from `simulation`
    /// when unset.
    pub input: Option<PathBuf>,
    /// Output directory.
    pub out: PathBuf,
    pub format: Format,
}

impl RunConfig {
    /// Reads a config file.
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| Error::Config {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Checks every section against its owning module's invariants.
    pub fn validate(&self) -> Result<(), Error> {
        self.simulation.validate()?;
        self.valuation.validate()?;
        let s = self.value.sweep;
        if s.steps == 0 || !(s.from > 0.0 && s.from <= 1.0 && s.to > 0.0 && s.to <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "sweep must have steps >= 1 and discounts in (0, 1], got {s:?}"
            )));
        }
        if self.value.n_paths == 0 {
            return Err(Error::InvalidConfig("value.n_paths must be at least 1".into()));
        }
        if let Some(fee) = self.value.paid_fee {
            if !fee.is_finite() {
                return Err(Error::InvalidConfig(format!("value.paid_fee must be finite, got {fee}")));
            }
        }
        let a = &self.auction;
        a.context.validate(&a.uniform())?;
        a.lognormal().validate()?;
        if let Some(x) = a.value {
            if !(x >= 0.0 && x.is_finite()) {
                return Err(Error::InvalidConfig(format!("auction.value must be non-negative, got {x}")));
            }
        }
        if a.bidders.is_empty() || a.bidders.iter().any(|&m| m < 2) {
            return Err(Error::InvalidConfig("auction.bidders must list counts of at least 2".into()));
        }
        if !(a.signal_scale > 0.0 && a.signal_scale.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "auction.signal_scale must be positive, got {}",
                a.signal_scale
            )));
        }
        let r = &self.report;
        if r.curve_bidders.is_empty() || r.curve_bidders.iter().any(|&m| m < 2) {
            return Err(Error::InvalidConfig("report.curve_bidders must list counts of at least 2".into()));
        }
        if r.curve_points < 2 {
            return Err(Error::InvalidConfig("report.curve_points must be at least 2".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_the_default() {
        let c: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        c.validate().unwrap();
    }

    #[test]
    fn round_trips_through_json() {
        let mut c = RunConfig::default();
        c.auction.context.reserve = 0.0045;
        c.simulation.seed = 7;
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
    }

    #[test]
    fn partial_sections_and_unknown_fields() {
        let c: RunConfig = serde_json::from_str(r#"{"simulation": {"n_securities": 3}, "format": "csv"}"#).unwrap();
        assert_eq!(c.simulation.n_securities, 3);
        assert_eq!(c.simulation.n_days, 252);
        assert_eq!(c.format, Format::Csv);
        assert!(serde_json::from_str::<RunConfig>(r#"{"simulation": {"n_secs": 3}}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"extra": 1}"#).is_err());
    }

    #[test]
    fn validation_rejects_bad_values() {
        let mut c = RunConfig::default();
        c.valuation.discount = 1.5;
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.auction.bidders = vec![1];
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.value.sweep.steps = 0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.auction.context.reserve = 0.02;
        assert_eq!(c.validate().unwrap_err().exit_code(), crate::error::EXIT_VALIDATION);
    }
}
