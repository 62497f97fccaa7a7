//! Daily profit and loss of holding the exclusive at a given fee.

use alloc::vec::Vec;

use super::take::max_take;
use super::{ValuationError, ValuationParams};
use crate::sim::PortfolioTimeSeries;
use crate::{math, TRADING_DAYS_PER_YEAR};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PnlSeries {
    /// Daily P&L in currency.
    pub daily: Vec<f64>,
    /// Sample standard deviation of `daily`.
    pub volatility: f64,
}

impl PnlSeries {
    pub fn total(&self) -> f64 {
        self.daily.iter().sum()
    }
}

/// `Σ_i A_it S_it R_it / 252 − fee · Σ_i H_it S_it / 252` per day, where
/// `fee` is the annualized fraction paid for the exclusive.
pub fn daily_pnl(ts: &PortfolioTimeSeries, params: &ValuationParams, paid_fee: f64) -> Result<PnlSeries, ValuationError> {
    params.validate()?;
    if !paid_fee.is_finite() {
        return Err(ValuationError::NonFiniteValue { index: 0 });
    }
    let window;
    let data = match params.window {
        None => ts,
        Some((a, b)) => {
            window = ts.window(a, b)?;
            &window
        }
    };
    let n = data.n_days();
    let mut income = alloc::vec![0.0; n];
    let mut notional = alloc::vec![0.0; n];
    for i in 0..data.n_securities() {
        let d = params.delta_override.unwrap_or(data.delta(i));
        let (s, r, b, l, inv, h) = (
            data.price(i),
            data.rate(i),
            data.borrow(i),
            data.locates(i),
            data.inventory(i),
            data.holdings(i),
        );
        for t in 0..n {
            income[t] += max_take(b[t], l[t], inv[t], h[t], d) * s[t] * r[t];
            notional[t] += h[t] * s[t];
        }
    }
    let daily: Vec<f64> = income
        .iter()
        .zip(&notional)
        .map(|(a, h)| (a - paid_fee * h) / TRADING_DAYS_PER_YEAR)
        .collect();
    let volatility = math::sqrt(math::mean_variance(&daily).1);
    Ok(PnlSeries { daily, volatility })
}
