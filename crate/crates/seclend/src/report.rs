//! Report documents of the `simulate`, `value` and `bid` commands and the
//! plot-data tables derived from them.
//!
//! Raw annualized fractions are kept in every machine-readable field; the
//! `*_bps` fields are basis points rounded half-to-even to two decimals.

use std::collections::BTreeMap;

use seclend_core::auction::{
    bid_combined_realistic, bid_combined_variable, bid_interdependent_irwin_hall, bid_lognormal,
    bid_reserve_general, bid_reserve_lognormal, bid_reserve_uniform, bid_uniform, bid_variable_general,
    bid_variable_uniform, bidder_count_pmf, optimal_reserve, screening_level, AuctionError, BidCurve,
    InterdependentMethod, LogNormalMethod, ReserveMethod,
};
use seclend_core::sim::{realized_drift_vol, PortfolioTimeSeries};
use seclend_core::valuation::{
    beta_sweep, daily_pnl, discount_grid, expected_valuation_set, valuation_set, ExpectedValuations, PeckingOrder,
    ValuationMode,
};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Error;

/// Basis points of an annualized fraction, rounded half-to-even to two
/// decimals. Rounding acts on the shortest decimal form of `fraction`, so a
/// value printed as `0.0030125` gives `30.12`.
pub fn to_bps(fraction: f64) -> f64 {
    if !fraction.is_finite() || fraction == 0.0 {
        return fraction * 1e4;
    }
    let text = format!("{:e}", fraction.abs());
    let (mantissa, exp) = text.split_once('e').expect("LowerExp output has an exponent");
    let exp: i32 = exp.parse().expect("LowerExp exponent is an integer");
    let digits: Vec<u8> = mantissa.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    // The value is 0.d₁d₂… × 10^(exp+1); in hundredths of a basis point the
    // first `keep` digits form the integer part.
    let keep = exp + 1 + 4 + 2;
    if keep > 30 {
        return fraction * 1e4;
    }
    let (mut units, rest): (u128, &[u8]) = if keep <= 0 {
        (0, if keep == 0 { &digits[..] } else { &[] })
    } else {
        let k = keep as usize;
        let mut u = 0u128;
        for i in 0..k {
            u = u * 10 + u128::from(*digits.get(i).unwrap_or(&0));
        }
        (u, digits.get(k..).unwrap_or(&[]))
    };
    if let Some((&first, tail)) = rest.split_first() {
        let above_half = first > 5 || (first == 5 && tail.iter().any(|&d| d != 0));
        let tie = first == 5 && tail.iter().all(|&d| d == 0);
        if above_half || (tie && units % 2 == 1) {
            units += 1;
        }
    }
    let sign = if fraction < 0.0 { "-" } else { "" };
    format!("{sign}{}.{:02}", units / 100, units % 100)
        .parse()
        .expect("formatted decimal parses")
}

/// Drift and volatility of one simulated variable across securities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub variable: String,
    pub drift_mean: Option<f64>,
    pub drift_min: Option<f64>,
    pub drift_max: Option<f64>,
    pub vol_mean: Option<f64>,
    pub vol_min: Option<f64>,
    pub vol_max: Option<f64>,
}

/// Output of `simulate` besides the dataset file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub kind: String,
    pub config: RunConfig,
    pub n_securities: usize,
    pub n_days: usize,
    /// Realized annualized drift and volatility of each GBM variable;
    /// empty statistics when paths have fewer than three days.
    pub series: Vec<SeriesSummary>,
}

impl SimulationReport {
    pub fn new(config: &RunConfig, ts: &PortfolioTimeSeries) -> Self {
        type Getter = fn(&PortfolioTimeSeries, usize) -> &[f64];
        let variables: [(&str, Getter); 5] = [
            ("S", PortfolioTimeSeries::price),
            ("R", PortfolioTimeSeries::rate),
            ("B", PortfolioTimeSeries::borrow),
            ("I", PortfolioTimeSeries::inventory),
            ("H", PortfolioTimeSeries::holdings),
        ];
        let series = variables
            .iter()
            .map(|(name, get)| {
                let stats: Vec<(f64, f64)> =
                    (0..ts.n_securities()).filter_map(|i| realized_drift_vol(get(ts, i))).collect();
                let pick = |f: fn(&(f64, f64)) -> f64| {
                    let v: Vec<f64> = stats.iter().map(f).collect();
                    if v.is_empty() {
                        return (None, None, None);
                    }
                    let mean = v.iter().sum::<f64>() / v.len() as f64;
                    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
                    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    (Some(mean), Some(min), Some(max))
                };
                let (drift_mean, drift_min, drift_max) = pick(|s| s.0);
                let (vol_mean, vol_min, vol_max) = pick(|s| s.1);
                SeriesSummary {
                    variable: name.to_string(),
                    drift_mean,
                    drift_min,
                    drift_max,
                    vol_mean,
                    vol_min,
                    vol_max,
                }
            })
            .collect();
        SimulationReport {
            kind: "simulation".into(),
            config: config.clone(),
            n_securities: ts.n_securities(),
            n_days: ts.n_days(),
            series,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValuationEntry {
    pub annualized_fraction: f64,
    pub basis_points: f64,
    /// Sample variance of the daily valuation series.
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinedEntry {
    pub annualized_fraction: f64,
    pub basis_points: f64,
    pub k: usize,
    /// Weight of each valuation in the combination.
    pub weights: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub discount: f64,
    /// `zero` valuation at this discount factor.
    pub zero: f64,
    pub zero_bps: f64,
}

/// Daily series of each valuation and of the intermediary's P&L.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DailySeries {
    pub valuations: BTreeMap<String, Vec<f64>>,
    pub paid_fee: f64,
    pub pnl: Vec<f64>,
    pub pnl_volatility: f64,
}

/// Output of `value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationReport {
    pub kind: String,
    pub config: RunConfig,
    /// Dataset file, or `simulated`.
    pub dataset: String,
    pub n_securities: usize,
    pub n_days: usize,
    pub valuations: BTreeMap<String, ValuationEntry>,
    /// `None` when some daily series has zero variance.
    pub combined: Option<CombinedEntry>,
    pub pecking_order_ok: bool,
    pub pecking_order: PeckingOrder,
    pub transaction_negative: bool,
    pub beta_sweep: Vec<SweepPoint>,
    pub daily: DailySeries,
    /// Monte Carlo means over `value.n_paths` simulated datasets.
    pub expected: Option<ExpectedValuations>,
}

impl ValuationReport {
    /// Values `ts`. `simulated` enables the Monte Carlo expectation, which
    /// redraws datasets from the simulation config.
    pub fn new(config: &RunConfig, ts: &PortfolioTimeSeries, dataset: &str, simulated: bool) -> Result<Self, Error> {
        let params = &config.valuation;
        let set = valuation_set(ts, params)?;
        let valuations = ValuationMode::ALL
            .iter()
            .map(|&m| {
                let e = set.get(m);
                let entry = ValuationEntry {
                    annualized_fraction: e.value,
                    basis_points: to_bps(e.value),
                    variance: e.variance,
                };
                (m.name().to_string(), entry)
            })
            .collect();
        let combined = set.combined.as_ref().map(|c| CombinedEntry {
            annualized_fraction: c.value,
            basis_points: to_bps(c.value),
            k: c.k,
            weights: ValuationMode::ALL
                .iter()
                .zip(&c.weights)
                .map(|(m, w)| (m.name().to_string(), *w))
                .collect(),
        });
        let s = config.value.sweep;
        let beta_sweep = beta_sweep(ts, params, &discount_grid(s.from, s.to, s.steps))?
            .into_iter()
            .map(|(discount, zero)| SweepPoint {
                discount,
                zero,
                zero_bps: to_bps(zero),
            })
            .collect();
        let paid_fee = config.value.paid_fee.unwrap_or(set.value(ValuationMode::Beta));
        let pnl = daily_pnl(ts, params, paid_fee)?;
        let daily = DailySeries {
            valuations: ValuationMode::ALL
                .iter()
                .map(|&m| (m.name().to_string(), set.get(m).daily.clone()))
                .collect(),
            paid_fee,
            pnl: pnl.daily,
            pnl_volatility: pnl.volatility,
        };
        let expected = if simulated && config.value.n_paths > 1 {
            Some(expected_valuation_set(&config.simulation, params, config.value.n_paths)?)
        } else {
            None
        };
        Ok(ValuationReport {
            kind: "valuation".into(),
            config: config.clone(),
            dataset: dataset.to_string(),
            n_securities: ts.n_securities(),
            n_days: ts.n_days(),
            valuations,
            combined,
            pecking_order_ok: set.pecking.all(),
            pecking_order: set.pecking,
            transaction_negative: set.transaction_negative,
            beta_sweep,
            daily,
            expected,
        })
    }

    /// Summary table: one row per valuation, then the combination.
    pub fn summary_rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = ValuationMode::ALL
            .iter()
            .filter_map(|m| self.valuations.get(m.name()).map(|e| (m.name(), e)))
            .map(|(name, e)| {
                vec![
                    name.to_string(),
                    e.annualized_fraction.to_string(),
                    format!("{:.2}", e.basis_points),
                    e.variance.to_string(),
                ]
            })
            .collect();
        if let Some(c) = &self.combined {
            rows.push(vec![
                "combined".into(),
                c.annualized_fraction.to_string(),
                format!("{:.2}", c.basis_points),
                String::new(),
            ]);
        }
        rows
    }

    /// Daily table: position in the valuation window, each valuation, P&L.
    /// The `historical` series is indexed from the start of its own window.
    pub fn daily_rows(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let names: Vec<&str> = ValuationMode::ALL.iter().map(|m| m.name()).collect();
        let series: Vec<&[f64]> = names
            .iter()
            .map(|n| self.daily.valuations.get(*n).map_or(&[][..], Vec::as_slice))
            .collect();
        let len = series
            .iter()
            .map(|s| s.len())
            .chain([self.daily.pnl.len()])
            .max()
            .unwrap_or(0);
        let cell = |s: &[f64], t: usize| s.get(t).map_or(String::new(), f64::to_string);
        let rows = (0..len)
            .map(|t| {
                let mut row = vec![t.to_string()];
                row.extend(series.iter().map(|s| cell(s, t)));
                row.push(cell(&self.daily.pnl, t));
                row
            })
            .collect();
        let mut header = vec!["day".to_string()];
        header.extend(names.iter().map(|n| n.to_string()));
        header.push("pnl".into());
        (header, rows)
    }

    pub fn sweep_rows(&self) -> Vec<Vec<String>> {
        self.beta_sweep
            .iter()
            .map(|p| vec![p.discount.to_string(), p.zero.to_string(), format!("{:.2}", p.zero_bps)])
            .collect()
    }
}

/// Outcome of one bid setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BidStatus {
    Ok,
    /// The value is below the reserve: the bidder stays out.
    BelowReserve,
    /// The signal is below the screening level: the bidder stays out.
    BelowScreening,
    /// The setting does not apply to this value (for example outside the
    /// distribution's support).
    Unavailable,
}

/// One row of the bid table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BidRow {
    pub setting: String,
    pub method: String,
    /// Bidder count; `None` for the uncertain-count settings.
    pub bidders: Option<u32>,
    pub reserve: f64,
    pub status: BidStatus,
    pub bid: Option<f64>,
    pub bid_bps: Option<f64>,
    /// Numerically integrated bid of the same setting, for rows computed
    /// from a closed form or an approximation.
    pub reference: Option<f64>,
    /// Lowest participating value of the interdependent settings.
    pub screening_level: Option<f64>,
    pub detail: Option<String>,
}

/// Output of `bid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BidReport {
    pub kind: String,
    pub config: RunConfig,
    /// Bidder's value of the exclusive.
    pub value: f64,
    pub value_bps: f64,
    /// Where the value came from.
    pub value_source: String,
    /// Seller's optimal reserve under each value distribution.
    pub optimal_reserve: BTreeMap<String, f64>,
    pub rows: Vec<BidRow>,
}

struct RowSpec<'a> {
    setting: &'a str,
    method: &'a str,
    bidders: Option<u32>,
}

impl BidReport {
    /// Bids of a bidder with value `x` in every configured setting.
    pub fn new(config: &RunConfig, x: f64, value_source: &str) -> Result<Self, Error> {
        let a = &config.auction;
        let ctx = &a.context;
        let r = ctx.reserve;
        let s = a.signal_scale;
        let (uniform, lognormal) = (a.uniform(), a.lognormal());
        let (mu, sigma, omega) = (a.lognormal_mu, a.lognormal_sigma, a.omega);
        let (alpha, xi) = (ctx.alpha, ctx.xi);

        let mut rows = Vec::new();
        for &m in &a.bidders {
            let spec = |setting, method| RowSpec {
                setting,
                method,
                bidders: Some(m),
            };
            if r == 0.0 {
                rows.push(make_row(
                    spec("uniform", "closed"),
                    x,
                    r,
                    bid_uniform(x, m, omega),
                    Some(bid_reserve_general(x, 0.0, &uniform, m)),
                    None,
                )?);
                rows.push(make_row(
                    spec("lognormal", "approx"),
                    x,
                    r,
                    bid_lognormal(x, mu, sigma, m, LogNormalMethod::Approx),
                    Some(bid_lognormal(x, mu, sigma, m, LogNormalMethod::Numeric)),
                    None,
                )?);
                rows.push(make_row(
                    spec("lognormal", "numeric"),
                    x,
                    r,
                    bid_lognormal(x, mu, sigma, m, LogNormalMethod::Numeric),
                    None,
                    None,
                )?);
            } else {
                rows.push(make_row(
                    spec("uniform", "closed"),
                    x,
                    r,
                    bid_reserve_uniform(x, r, m, omega),
                    Some(bid_reserve_general(x, r, &uniform, m)),
                    None,
                )?);
                rows.push(make_row(
                    spec("lognormal", "taylor"),
                    x,
                    r,
                    bid_reserve_lognormal(x, r, mu, sigma, m, ReserveMethod::Taylor),
                    Some(bid_reserve_lognormal(x, r, mu, sigma, m, ReserveMethod::Numeric)),
                    None,
                )?);
                rows.push(make_row(
                    spec("lognormal", "numeric"),
                    x,
                    r,
                    bid_reserve_lognormal(x, r, mu, sigma, m, ReserveMethod::Numeric),
                    None,
                    None,
                )?);
            }
        }
        // Interdependent signals are Irwin–Hall on [0, 2] in units of
        // `signal_scale`; values and bids scale linearly with it.
        for &m in &a.bidders {
            let row = if r == 0.0 {
                make_row(
                    RowSpec {
                        setting: "interdependent",
                        method: "closed",
                        bidders: Some(m),
                    },
                    x,
                    r,
                    bid_interdependent_irwin_hall(x / s, m, alpha, xi, InterdependentMethod::Closed).map(|b| b * s),
                    Some(
                        bid_interdependent_irwin_hall(x / s, m, alpha, xi, InterdependentMethod::Quadrature)
                            .map(|b| b * s),
                    ),
                    None,
                )?
            } else {
                make_row(
                    RowSpec {
                        setting: "interdependent",
                        method: "screened",
                        bidders: Some(m),
                    },
                    x,
                    r,
                    bid_combined_realistic(x / s, r / s, m, alpha, xi).map(|b| b * s),
                    None,
                    screening_level(r / s, m, alpha, xi).ok().map(|v| v * s),
                )?
            };
            rows.push(row);
        }

        let beliefs = match &ctx.beliefs {
            Some(p) => p.clone(),
            None => bidder_count_pmf(ctx.bidders)?,
        };
        let variable = |setting| RowSpec {
            setting,
            method: "numeric",
            bidders: None,
        };
        let uniform_reference = (r == 0.0).then(|| bid_variable_uniform(x, &beliefs, omega));
        rows.push(make_row(
            variable("variable_uniform"),
            x,
            r,
            bid_variable_general(x, r, &uniform, &beliefs),
            uniform_reference,
            None,
        )?);
        rows.push(make_row(
            variable("variable_lognormal"),
            x,
            r,
            bid_variable_general(x, r, &lognormal, &beliefs),
            None,
            None,
        )?);
        rows.push(make_row(
            variable("variable_interdependent"),
            x,
            r,
            bid_combined_variable(x / s, r / s, &beliefs, alpha, xi).map(|b| b * s),
            None,
            None,
        )?);

        let mut optimal = BTreeMap::new();
        optimal.insert("uniform".to_string(), optimal_reserve(ctx.seller_value, &uniform)?);
        optimal.insert("lognormal".to_string(), optimal_reserve(ctx.seller_value, &lognormal)?);
        Ok(BidReport {
            kind: "bid".into(),
            config: config.clone(),
            value: x,
            value_bps: to_bps(x),
            value_source: value_source.to_string(),
            optimal_reserve: optimal,
            rows,
        })
    }

    pub const HEADER: [&'static str; 10] = [
        "setting",
        "method",
        "bidders",
        "reserve",
        "status",
        "bid",
        "bid_bps",
        "reference",
        "screening_level",
        "detail",
    ];

    pub fn table_rows(&self) -> Vec<Vec<String>> {
        let opt = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.setting.clone(),
                    r.method.clone(),
                    r.bidders.map_or(String::new(), |m| m.to_string()),
                    r.reserve.to_string(),
                    status_name(r.status).to_string(),
                    opt(r.bid),
                    r.bid_bps.map_or(String::new(), |b| format!("{b:.2}")),
                    opt(r.reference),
                    opt(r.screening_level),
                    r.detail.clone().unwrap_or_default(),
                ]
            })
            .collect()
    }

    /// Rows with a bidder count, as `(setting, method, bidders, bid, bid_bps)`.
    pub fn by_bidders_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .filter_map(|r| r.bidders.map(|m| (r, m)))
            .map(|(r, m)| {
                vec![
                    r.setting.clone(),
                    r.method.clone(),
                    m.to_string(),
                    r.bid.map_or(String::new(), |b| b.to_string()),
                    r.bid_bps.map_or(String::new(), |b| format!("{b:.2}")),
                ]
            })
            .collect()
    }
}

pub fn status_name(s: BidStatus) -> &'static str {
    match s {
        BidStatus::Ok => "ok",
        BidStatus::BelowReserve => "below_reserve",
        BidStatus::BelowScreening => "below_screening",
        BidStatus::Unavailable => "unavailable",
    }
}

fn make_row(
    spec: RowSpec,
    x: f64,
    r: f64,
    bid: Result<f64, AuctionError>,
    reference: Option<Result<f64, AuctionError>>,
    screening_level: Option<f64>,
) -> Result<BidRow, Error> {
    let mut row = BidRow {
        setting: spec.setting.to_string(),
        method: spec.method.to_string(),
        bidders: spec.bidders,
        reserve: r,
        status: BidStatus::Ok,
        bid: None,
        bid_bps: None,
        reference: None,
        screening_level,
        detail: None,
    };
    if x < r {
        row.status = BidStatus::BelowReserve;
        return Ok(row);
    }
    match bid {
        Ok(b) => {
            row.bid = Some(b);
            row.bid_bps = Some(to_bps(b));
            row.reference = reference.and_then(Result::ok);
        }
        Err(e) => {
            row.status = match e {
                AuctionError::BelowReserve { .. } => BidStatus::BelowReserve,
                AuctionError::BelowScreening { .. } | AuctionError::NoParticipation { .. } => {
                    BidStatus::BelowScreening
                }
                AuctionError::NumericFailure(_)
                | AuctionError::Numerics(_)
                | AuctionError::NoReserveSolution { .. } => return Err(e.into()),
                _ => BidStatus::Unavailable,
            };
            row.detail = Some(e.to_string());
        }
    }
    Ok(row)
}

/// Bid curves over values for the uniform distribution with the configured
/// reserve, one per bidder count, labeled `uniform_m{M}`.
pub fn uniform_bid_curves(config: &RunConfig) -> Result<Vec<(String, BidCurve)>, Error> {
    let a = &config.auction;
    config
        .report
        .curve_bidders
        .iter()
        .map(|&m| {
            let curve = BidCurve::private_values(&a.uniform(), m, a.context.reserve, config.report.curve_points)?;
            Ok((format!("uniform_m{m}"), curve))
        })
        .collect()
}

pub fn curve_rows(curve: &BidCurve) -> Vec<Vec<String>> {
    curve
        .points
        .iter()
        .map(|p| vec![p.x.to_string(), p.bid.to_string(), p.foc_residual.to_string()])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bps_rounds_half_to_even() {
        assert_eq!(to_bps(0.0030125), 30.12);
        assert_eq!(to_bps(0.0030135), 30.14);
        assert_eq!(to_bps(0.00301251), 30.13);
        assert_eq!(to_bps(-0.0030125), -30.12);
        assert_eq!(to_bps(0.004), 40.0);
        assert_eq!(to_bps(0.0), 0.0);
        assert_eq!(to_bps(5e-7), 0.0);
        assert_eq!(to_bps(1.5e-6), 0.02);
        assert_eq!(to_bps(4e-7), 0.0);
        assert_eq!(to_bps(6e-7), 0.01);
        assert_eq!(to_bps(1e-12), 0.0);
        assert_eq!(to_bps(12.3456789), 123456.79);
    }

    fn bids(x: f64, r: f64) -> BidReport {
        let mut c = RunConfig::default();
        c.auction.context.reserve = r;
        c.auction.bidders = vec![2, 5, 10];
        BidReport::new(&c, x, "explicit").unwrap()
    }

    fn find<'a>(rep: &'a BidReport, setting: &str, method: &str) -> Vec<&'a BidRow> {
        rep.rows.iter().filter(|r| r.setting == setting && r.method == method).collect()
    }

    #[test]
    fn uniform_bids_increase_with_bidders() {
        let rep = bids(0.004, 0.0);
        let b: Vec<f64> = find(&rep, "uniform", "closed").iter().map(|r| r.bid.unwrap()).collect();
        assert_eq!(b.len(), 3);
        assert!(b[0] < b[1] && b[1] < b[2], "{b:?}");
        for r in find(&rep, "uniform", "closed") {
            assert!((r.bid.unwrap() - r.reference.unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn lognormal_approx_is_half_the_value() {
        let rep = bids(0.004, 0.0);
        for r in find(&rep, "lognormal", "approx") {
            assert_eq!(r.bid_bps, Some(20.0));
            assert!(r.reference.is_some());
        }
    }

    #[test]
    fn value_below_reserve_is_marked() {
        let rep = bids(0.004, 0.0045);
        assert!(rep.rows.iter().all(|r| r.status == BidStatus::BelowReserve && r.bid.is_none()));
        let above = bids(0.005, 0.0045);
        assert!(above.rows.iter().filter(|r| r.setting == "uniform").all(|r| r.status == BidStatus::Ok));
    }

    #[test]
    fn every_setting_reports() {
        let rep = bids(0.004, 0.0);
        assert!(rep.rows.iter().all(|r| r.status == BidStatus::Ok), "{:#?}", rep.rows);
        let rep = bids(0.004, 0.001);
        assert!(rep.rows.iter().all(|r| r.status == BidStatus::Ok), "{:#?}", rep.rows);
        assert!(find(&rep, "interdependent", "screened").iter().all(|r| r.screening_level.is_some()));
        assert!((rep.optimal_reserve["uniform"] - 0.005).abs() < 1e-12);
    }

    #[test]
    fn value_outside_uniform_support_is_unavailable() {
        let rep = bids(0.02, 0.0);
        let u = find(&rep, "uniform", "closed");
        assert!(u.iter().all(|r| r.status == BidStatus::Unavailable && r.detail.is_some()));
    }

    #[test]
    fn curves_are_labeled_per_bidder_count() {
        let curves = uniform_bid_curves(&RunConfig::default()).unwrap();
        let labels: Vec<&str> = curves.iter().map(|c| c.0.as_str()).collect();
        assert_eq!(labels.len(), 9);
        assert_eq!(labels[0], "uniform_m2");
        assert_eq!(labels[8], "uniform_m10");
        assert!(curves.iter().all(|c| c.1.monotone && c.1.points.len() == 101));
    }
}
