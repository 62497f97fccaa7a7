//! Exclusive valuations of a portfolio history.
//!
//! The benchmark value of an exclusive is the fee at which the intermediary
//! breaks even: lending income from shares taken out of the exclusive pool,
//! `A = min(H, max(B + δL − I, 0))`, over the value of the pool `H·S`. The
//! variants differ in discounting, transaction costs, the locate conversion
//! rate and the rate series used:
//!
//! | mode            | discount | δ     | rate | costs |
//! |-----------------|----------|-------|------|-------|
//! | zero            | β^t      | own   | R    | no    |
//! | beta            | 1        | own   | R    | no    |
//! | transaction     | 1        | own   | R    | yes   |
//! | conservative    | 1        | 0     | R    | no    |
//! | beta_alternate  | 1        | own   | Q    | no    |
//! | alternate       | 1        | 0     | Q    | no    |
//! | historical      | 1        | own   | R    | no    |
//!
//! `historical` is evaluated on its own window of past data.

mod combine;
mod expected;
mod ladder;
mod pnl;
mod take;

pub use combine::{combine_variance_weighted, CombinedValuation};
pub use expected::{expected_valuation_set, ExpectedValuations};
pub use ladder::{
    beta_sweep, discount_grid, valuation, valuation_set, value, ModeValuation, PeckingOrder, ValuationSet,
};
pub use pnl::{daily_pnl, PnlSeries};
pub use take::{
    daily_transaction_costs, max_take, transaction_cost_of_path, transaction_cost_path, transaction_costs,
};

use thiserror::Error;

use crate::sim::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ValuationMode {
    Zero,
    Beta,
    Transaction,
    Conservative,
    BetaAlternate,
    Alternate,
    Historical,
}

impl ValuationMode {
    pub const ALL: [ValuationMode; 7] = [
        ValuationMode::Zero,
        ValuationMode::Beta,
        ValuationMode::Transaction,
        ValuationMode::Conservative,
        ValuationMode::BetaAlternate,
        ValuationMode::Alternate,
        ValuationMode::Historical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ValuationMode::Zero => "zero",
            ValuationMode::Beta => "beta",
            ValuationMode::Transaction => "transaction",
            ValuationMode::Conservative => "conservative",
            ValuationMode::BetaAlternate => "beta_alternate",
            ValuationMode::Alternate => "alternate",
            ValuationMode::Historical => "historical",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Day range `start..end` of a dataset.
pub type Window = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ValuationParams {
    /// Discount factor β in `(0, 1]`, used by the `zero` mode.
    pub discount: f64,
    /// Cost per Take/Give state change per security (currency).
    pub cost: f64,
    /// Replaces every security's own δ when set.
    pub delta_override: Option<f64>,
    /// Valuation window; the whole dataset when `None`.
    pub window: Option<Window>,
    /// Window of the `historical` mode; falls back to `window`.
    pub historical_window: Option<Window>,
}

impl Default for ValuationParams {
    fn default() -> Self {
        Self {
            discount: 1.0,
            cost: 0.0,
            delta_override: None,
            window: None,
            historical_window: None,
        }
    }
}

impl ValuationParams {
    pub fn validate(&self) -> Result<(), ValuationError> {
        if !(self.discount > 0.0 && self.discount <= 1.0) {
            return Err(ValuationError::InvalidDiscount(self.discount));
        }
        if !(self.cost >= 0.0 && self.cost.is_finite()) {
            return Err(ValuationError::InvalidCost(self.cost));
        }
        if let Some(d) = self.delta_override {
            if !(0.0..=1.0).contains(&d) {
                return Err(ValuationError::InvalidDelta(d));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValuationError {
    #[error("discount factor must lie in (0, 1], got {0}")]
    InvalidDiscount(f64),
    #[error("transaction cost must be non-negative, got {0}")]
    InvalidCost(f64),
    #[error("delta override must lie in [0, 1], got {0}")]
    InvalidDelta(f64),
    #[error("portfolio has no holdings value in the valuation window")]
    DegeneratePortfolio,
    #[error("at least two series are needed to combine, got {0}")]
    TooFewSeries(usize),
    #[error("variance of series {index} must be positive and finite, got {variance}")]
    InvalidVariance { index: usize, variance: f64 },
    #[error("value of series {index} is not finite")]
    NonFiniteValue { index: usize },
    #[error("at least one simulated path is required")]
    NoPaths,
    #[error(transparent)]
    Data(#[from] SimError),
}
