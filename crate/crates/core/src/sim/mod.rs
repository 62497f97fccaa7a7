//! Synthetic portfolio histories.
//!
//! Every quantity series (price, loan rate, borrow, inventory, holdings) is a
//! daily geometric Brownian motion whose drift, volatility and starting value
//! are themselves drawn uniformly from [`SeedRanges`]. Locates are absolute
//! normal (or Poisson) draws, and the alternate rate is a fixed fraction of
//! the loan rate.

mod correlation;
mod dataset;
mod params;
mod paths;

pub use correlation::cholesky5;
pub use dataset::{
    build_portfolio_dataset, realized_drift_vol, simulate_from_params, simulate_portfolio, Observation,
    PortfolioTimeSeries, Simulation,
};
pub use params::{draw_security_params, GbmParams, Interval, LocateModel, SecurityPathParams, SeedRanges};
pub use paths::{gbm_step, simulate_gbm_path, simulate_locates, simulate_locates_poisson};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("starting value must be positive, got {0}")]
    NonPositiveStart(f64),
    #[error("volatility must be non-negative, got {0}")]
    NegativeVolatility(f64),
    #[error("parameter {0} is not finite")]
    NonFiniteParameter(&'static str),
    #[error("{0} must be at least 1")]
    EmptyDimension(&'static str),
    #[error("discount factor must lie in (0, 1], got {0}")]
    InvalidDiscount(f64),
    #[error("transaction cost must be non-negative, got {0}")]
    InvalidCost(f64),
    #[error("interval {name} = [{lo}, {hi}] is empty or not finite")]
    InvalidInterval { name: &'static str, lo: f64, hi: f64 },
    #[error("interval {name} = [{lo}, {hi}] leaves the parameter's domain")]
    OutOfDomain { name: &'static str, lo: f64, hi: f64 },
    #[error("invalid correlation matrix: {0}")]
    InvalidCorrelation(&'static str),
    #[error("invalid {field} = {value} for security {security}, day {day}")]
    InvalidObservation {
        field: &'static str,
        security: usize,
        day: usize,
        value: f64,
    },
    #[error("alternate rate exceeds loan rate for security {security}, day {day}")]
    AltRateAboveRate { security: usize, day: usize },
    #[error("delta changes over time for security {security} (day {day})")]
    DeltaChanges { security: usize, day: usize },
    #[error("security {security}, day {day} is outside the declared dataset shape")]
    ObservationOutOfRange { security: usize, day: usize },
    #[error("duplicate record for security {security}, day {day}")]
    DuplicateObservation { security: usize, day: usize },
    #[error("missing record for security {security}, day {day}")]
    MissingObservation { security: usize, day: usize },
    #[error("window {start}..{end} is invalid for {n_days} days")]
    InvalidWindow { start: usize, end: usize, n_days: usize },
}
