//! The valuation ladder.
//!
//! Every mode reduces to per-day sums `N_t = Σ_i A_it S_it R_it` and
//! `D_t = Σ_i H_it S_it`, then `υ = Σ_t w_t N_t / Σ_t w_t D_t`. All modes
//! share one evaluation order, so the dominance relations between them hold
//! exactly in floating point: each operation is monotone in its inputs.

use alloc::vec::Vec;

use super::combine::{combine_variance_weighted, CombinedValuation};
use super::take::{daily_transaction_costs, max_take};
use super::{ValuationError, ValuationMode, ValuationParams};
use crate::math;
use crate::sim::PortfolioTimeSeries;

/// One valuation with its per-day series.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeValuation {
    pub mode: ValuationMode,
    /// Annualized fraction of portfolio value.
    pub value: f64,
    /// Per-day valuation `N_t / D_t` (transaction costs charged on the day
    /// they occur); days with no holdings contribute 0.
    pub daily: Vec<f64>,
    /// Sample variance of `daily`.
    pub variance: f64,
}

/// Pairwise checks of the dominance chain between the valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PeckingOrder {
    pub beta_ge_conservative: bool,
    pub conservative_ge_alternate: bool,
    pub beta_ge_beta_alternate: bool,
    pub beta_alternate_ge_alternate: bool,
    pub transaction_le_beta: bool,
}

impl PeckingOrder {
    pub fn all(&self) -> bool {
        self.beta_ge_conservative
            && self.conservative_ge_alternate
            && self.beta_ge_beta_alternate
            && self.beta_alternate_ge_alternate
            && self.transaction_le_beta
    }
}

/// All seven valuations of one dataset.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValuationSet {
    /// Indexed in [`ValuationMode::ALL`] order.
    pub entries: Vec<ModeValuation>,
    /// Variance-weighted combination; `None` when some series has zero
    /// variance (for example a single-day window).
    pub combined: Option<CombinedValuation>,
    pub pecking: PeckingOrder,
    /// The transaction-cost valuation is negative.
    pub transaction_negative: bool,
}

impl ValuationSet {
    pub fn get(&self, mode: ValuationMode) -> &ModeValuation {
        &self.entries[mode.index()]
    }

    pub fn value(&self, mode: ValuationMode) -> f64 {
        self.get(mode).value
    }
}

struct DaySums {
    num: Vec<f64>,
    den: Vec<f64>,
}

/// `N_t` and `D_t` with the given δ rule and rate series.
fn day_sums(ts: &PortfolioTimeSeries, delta: impl Fn(usize) -> f64, alternate: bool) -> DaySums {
    let n = ts.n_days();
    let mut num = alloc::vec![0.0; n];
    let mut den = alloc::vec![0.0; n];
    for i in 0..ts.n_securities() {
        let d = delta(i);
        let (s, b, l, inv, h) = (ts.price(i), ts.borrow(i), ts.locates(i), ts.inventory(i), ts.holdings(i));
        let rate = if alternate { ts.alt_rate(i) } else { ts.rate(i) };
        for t in 0..n {
            let a = max_take(b[t], l[t], inv[t], h[t], d);
            num[t] += a * s[t] * rate[t];
            den[t] += h[t] * s[t];
        }
    }
    DaySums { num, den }
}

/// `(Σ_t w_t N_t, Σ_t w_t D_t)` with `w_t = discount^t`.
fn weighted_sums(num: &[f64], den: &[f64], discount: f64) -> Result<(f64, f64), ValuationError> {
    let mut n = 0.0;
    let mut d = 0.0;
    let mut w = 1.0;
    for (a, b) in num.iter().zip(den) {
        n += w * a;
        d += w * b;
        w *= discount;
    }
    if !(d > 0.0) {
        return Err(ValuationError::DegeneratePortfolio);
    }
    Ok((n, d))
}

fn weighted_ratio(num: &[f64], den: &[f64], discount: f64) -> Result<f64, ValuationError> {
    weighted_sums(num, den, discount).map(|(n, d)| n / d)
}

fn daily_ratio(num: &[f64], den: &[f64]) -> Vec<f64> {
    num.iter()
        .zip(den)
        .map(|(a, b)| if *b > 0.0 { a / b } else { 0.0 })
        .collect()
}

fn evaluate(ts: &PortfolioTimeSeries, params: &ValuationParams, mode: ValuationMode) -> Result<ModeValuation, ValuationError> {
    use ValuationMode::*;
    let own = |i: usize| params.delta_override.unwrap_or(ts.delta(i));
    let zero = |_: usize| 0.0;
    let sums = match mode {
        Zero | Beta | Transaction | Historical => day_sums(ts, own, false),
        BetaAlternate => day_sums(ts, own, true),
        Conservative => day_sums(ts, zero, false),
        Alternate => day_sums(ts, zero, true),
    };
    let discount = if mode == Zero { params.discount } else { 1.0 };
    let (value, daily) = if mode == Transaction {
        let tc = daily_transaction_costs(ts, params.cost, params.delta_override);
        let net: Vec<f64> = sums.num.iter().zip(&tc).map(|(n, c)| n - c).collect();
        let (n, d) = weighted_sums(&sums.num, &sums.den, 1.0)?;
        let total_tc: f64 = tc.iter().sum();
        ((n - total_tc) / d, daily_ratio(&net, &sums.den))
    } else {
        (
            weighted_ratio(&sums.num, &sums.den, discount)?,
            daily_ratio(&sums.num, &sums.den),
        )
    };
    let variance = math::mean_variance(&daily).1;
    Ok(ModeValuation {
        mode,
        value,
        daily,
        variance,
    })
}

/// Restricts `ts` to the window configured for `mode`.
fn windowed<'a>(
    ts: &'a PortfolioTimeSeries,
    params: &ValuationParams,
    mode: ValuationMode,
    buf: &'a mut Option<PortfolioTimeSeries>,
) -> Result<&'a PortfolioTimeSeries, ValuationError> {
    let w = if mode == ValuationMode::Historical {
        params.historical_window.or(params.window)
    } else {
        params.window
    };
    match w {
        None => Ok(ts),
        Some((a, b)) => Ok(buf.insert(ts.window(a, b)?)),
    }
}

/// One valuation of `ts`.
pub fn value(ts: &PortfolioTimeSeries, params: &ValuationParams, mode: ValuationMode) -> Result<f64, ValuationError> {
    valuation(ts, params, mode).map(|v| v.value)
}

/// One valuation with its per-day series and variance.
pub fn valuation(
    ts: &PortfolioTimeSeries,
    params: &ValuationParams,
    mode: ValuationMode,
) -> Result<ModeValuation, ValuationError> {
    params.validate()?;
    let mut buf = None;
    let data = windowed(ts, params, mode, &mut buf)?;
    evaluate(data, params, mode)
}

/// All seven valuations, their combination and the dominance checks.
pub fn valuation_set(ts: &PortfolioTimeSeries, params: &ValuationParams) -> Result<ValuationSet, ValuationError> {
    let entries = ValuationMode::ALL
        .iter()
        .map(|&m| valuation(ts, params, m))
        .collect::<Result<Vec<_>, _>>()?;
    let v = |m: ValuationMode| entries[m.index()].value;
    use ValuationMode::*;
    let pecking = PeckingOrder {
        beta_ge_conservative: v(Beta) >= v(Conservative),
        conservative_ge_alternate: v(Conservative) >= v(Alternate),
        beta_ge_beta_alternate: v(Beta) >= v(BetaAlternate),
        beta_alternate_ge_alternate: v(BetaAlternate) >= v(Alternate),
        transaction_le_beta: v(Transaction) <= v(Beta),
    };
    let pairs: Vec<(f64, f64)> = entries.iter().map(|e| (e.value, e.variance)).collect();
    let combined = combine_variance_weighted(&pairs).ok();
    let transaction_negative = v(Transaction) < 0.0;
    Ok(ValuationSet {
        entries,
        combined,
        pecking,
        transaction_negative,
    })
}

/// `υ^zero` at each discount factor in `discounts`.
pub fn beta_sweep(
    ts: &PortfolioTimeSeries,
    params: &ValuationParams,
    discounts: &[f64],
) -> Result<Vec<(f64, f64)>, ValuationError> {
    params.validate()?;
    let mut buf = None;
    let data = windowed(ts, params, ValuationMode::Zero, &mut buf)?;
    let own = |i: usize| params.delta_override.unwrap_or(data.delta(i));
    let sums = day_sums(data, own, false);
    discounts
        .iter()
        .map(|&b| {
            if !(b > 0.0 && b <= 1.0) {
                return Err(ValuationError::InvalidDiscount(b));
            }
            Ok((b, weighted_ratio(&sums.num, &sums.den, b)?))
        })
        .collect()
}

/// Evenly spaced discount factors from `from` to `to` inclusive.
pub fn discount_grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return alloc::vec![from];
    }
    (0..steps)
        .map(|k| from + (to - from) * k as f64 / (steps - 1) as f64)
        .collect()
}
