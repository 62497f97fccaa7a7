//! Portfolio histories: storage, validation and simulation.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::correlation::{cholesky5, correlate};
use super::params::{draw_security_params, LocateModel, SecurityPathParams, SeedRanges};
use super::paths::{gbm_step, simulate_gbm_path, simulate_locates, simulate_locates_poisson};
use super::SimError;
use crate::{math, TRADING_DAYS_PER_YEAR};

/// One (security, day) record.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Observation {
    pub security: usize,
    pub day: usize,
    /// Price S.
    pub price: f64,
    /// Annualized loan rate R.
    pub rate: f64,
    /// Annualized alternate rate Q.
    pub alt_rate: f64,
    /// Borrow book B (shares).
    pub borrow: f64,
    /// Locates L (shares).
    pub locates: f64,
    /// Internal inventory I (shares).
    pub inventory: f64,
    /// Exclusive holdings H (shares).
    pub holdings: f64,
    /// Locate conversion rate δ.
    pub delta: f64,
}

/// Daily series for every security, stored security-major so that each
/// security's history is a contiguous slice.
#[derive(Debug, Clone, PartialEq)]
pub struct PortfolioTimeSeries {
    n_securities: usize,
    n_days: usize,
    price: Vec<f64>,
    rate: Vec<f64>,
    alt_rate: Vec<f64>,
    borrow: Vec<f64>,
    locates: Vec<f64>,
    inventory: Vec<f64>,
    holdings: Vec<f64>,
    delta: Vec<f64>,
}

fn check_value(field: &'static str, o: &Observation, v: f64, positive: bool) -> Result<(), SimError> {
    let ok = v.is_finite() && if positive { v > 0.0 } else { v >= 0.0 };
    if ok {
        Ok(())
    } else {
        Err(SimError::InvalidObservation {
            field,
            security: o.security,
            day: o.day,
            value: v,
        })
    }
}

fn check_observation(o: &Observation) -> Result<(), SimError> {
    check_value("S", o, o.price, true)?;
    check_value("R", o, o.rate, false)?;
    check_value("Q", o, o.alt_rate, false)?;
    check_value("B", o, o.borrow, false)?;
    check_value("L", o, o.locates, false)?;
    check_value("I", o, o.inventory, false)?;
    check_value("H", o, o.holdings, false)?;
    if !(0.0..=1.0).contains(&o.delta) {
        return Err(SimError::InvalidObservation {
            field: "delta",
            security: o.security,
            day: o.day,
            value: o.delta,
        });
    }
    if o.alt_rate > o.rate {
        return Err(SimError::AltRateAboveRate {
            security: o.security,
            day: o.day,
        });
    }
    Ok(())
}

impl PortfolioTimeSeries {
    /// Assembles a dataset from records covering every (security, day) in
    /// `0..n_securities × 0..n_days` exactly once, in any order.
    ///
    /// Prices must be positive; rates and quantities non-negative, `Q ≤ R`,
    /// and δ in `[0, 1]` and constant per security.
    pub fn from_observations<I>(n_securities: usize, n_days: usize, records: I) -> Result<Self, SimError>
    where
        I: IntoIterator<Item = Observation>,
    {
        if n_securities == 0 {
            return Err(SimError::EmptyDimension("n_securities"));
        }
        if n_days == 0 {
            return Err(SimError::EmptyDimension("n_days"));
        }
        let len = n_securities * n_days;
        let mut ts = Self {
            n_securities,
            n_days,
            price: alloc::vec![0.0; len],
            rate: alloc::vec![0.0; len],
            alt_rate: alloc::vec![0.0; len],
            borrow: alloc::vec![0.0; len],
            locates: alloc::vec![0.0; len],
            inventory: alloc::vec![0.0; len],
            holdings: alloc::vec![0.0; len],
            delta: alloc::vec![f64::NAN; n_securities],
        };
        let mut seen = alloc::vec![false; len];
        for o in records {
            if o.security >= n_securities || o.day >= n_days {
                return Err(SimError::ObservationOutOfRange {
                    security: o.security,
                    day: o.day,
                });
            }
            check_observation(&o)?;
            let k = o.security * n_days + o.day;
            if seen[k] {
                return Err(SimError::DuplicateObservation {
                    security: o.security,
                    day: o.day,
                });
            }
            seen[k] = true;
            let d = &mut ts.delta[o.security];
            if d.is_nan() {
                *d = o.delta;
            } else if *d != o.delta {
                return Err(SimError::DeltaChanges {
                    security: o.security,
                    day: o.day,
                });
            }
            ts.price[k] = o.price;
            ts.rate[k] = o.rate;
            ts.alt_rate[k] = o.alt_rate;
            ts.borrow[k] = o.borrow;
            ts.locates[k] = o.locates;
            ts.inventory[k] = o.inventory;
            ts.holdings[k] = o.holdings;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(SimError::MissingObservation {
                security: k / n_days,
                day: k % n_days,
            });
        }
        Ok(ts)
    }

    pub fn n_securities(&self) -> usize {
        self.n_securities
    }

    pub fn n_days(&self) -> usize {
        self.n_days
    }

    fn range(&self, i: usize) -> core::ops::Range<usize> {
        i * self.n_days..(i + 1) * self.n_days
    }

    pub fn price(&self, i: usize) -> &[f64] {
        &self.price[self.range(i)]
    }

    pub fn rate(&self, i: usize) -> &[f64] {
        &self.rate[self.range(i)]
    }

    pub fn alt_rate(&self, i: usize) -> &[f64] {
        &self.alt_rate[self.range(i)]
    }

    pub fn borrow(&self, i: usize) -> &[f64] {
        &self.borrow[self.range(i)]
    }

    pub fn locates(&self, i: usize) -> &[f64] {
        &self.locates[self.range(i)]
    }

    pub fn inventory(&self, i: usize) -> &[f64] {
        &self.inventory[self.range(i)]
    }

    pub fn holdings(&self, i: usize) -> &[f64] {
        &self.holdings[self.range(i)]
    }

    pub fn delta(&self, i: usize) -> f64 {
        self.delta[i]
    }

    /// External supply `O = max(B + δL − I − H, 0)`: demand left unmet by
    /// inventory and the exclusive holdings.
    pub fn residual(&self, i: usize, t: usize) -> f64 {
        let k = i * self.n_days + t;
        let o = self.borrow[k] + self.delta[i] * self.locates[k] - self.inventory[k] - self.holdings[k];
        o.max(0.0)
    }

    pub fn observation(&self, i: usize, t: usize) -> Observation {
        let k = i * self.n_days + t;
        Observation {
            security: i,
            day: t,
            price: self.price[k],
            rate: self.rate[k],
            alt_rate: self.alt_rate[k],
            borrow: self.borrow[k],
            locates: self.locates[k],
            inventory: self.inventory[k],
            holdings: self.holdings[k],
            delta: self.delta[i],
        }
    }

    /// All records ordered by security, then day.
    pub fn observations(&self) -> impl Iterator<Item = Observation> + '_ {
        (0..self.n_securities).flat_map(move |i| (0..self.n_days).map(move |t| self.observation(i, t)))
    }

    /// Days `start..end` of every security, renumbered from 0.
    pub fn window(&self, start: usize, end: usize) -> Result<Self, SimError> {
        if start >= end || end > self.n_days {
            return Err(SimError::InvalidWindow {
                start,
                end,
                n_days: self.n_days,
            });
        }
        let n = end - start;
        let pick = |v: &[f64]| -> Vec<f64> {
            (0..self.n_securities)
                .flat_map(|i| v[i * self.n_days + start..i * self.n_days + end].iter().copied())
                .collect()
        };
        Ok(Self {
            n_securities: self.n_securities,
            n_days: n,
            price: pick(&self.price),
            rate: pick(&self.rate),
            alt_rate: pick(&self.alt_rate),
            borrow: pick(&self.borrow),
            locates: pick(&self.locates),
            inventory: pick(&self.inventory),
            holdings: pick(&self.holdings),
            delta: self.delta.clone(),
        })
    }
}

/// A simulated dataset together with the parameters that generated it.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub params: Vec<SecurityPathParams>,
    pub series: PortfolioTimeSeries,
}

/// RNG for security `i` (stream `i + 1`); stream 0 draws the parameters.
fn security_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64 + 1);
    rng
}

struct Paths {
    price: Vec<f64>,
    rate: Vec<f64>,
    borrow: Vec<f64>,
    inventory: Vec<f64>,
    holdings: Vec<f64>,
}

fn independent_paths(p: &SecurityPathParams, n_days: usize, rng: &mut ChaCha8Rng) -> Result<Paths, SimError> {
    let mut path = |g: super::GbmParams| simulate_gbm_path(g.x0, g.mu, g.sigma, n_days, rng);
    Ok(Paths {
        price: path(p.price)?,
        rate: path(p.rate)?,
        borrow: path(p.borrow)?,
        inventory: path(p.inventory)?,
        holdings: path(p.holdings)?,
    })
}

fn correlated_paths(
    p: &SecurityPathParams,
    n_days: usize,
    chol: &[[f64; 5]; 5],
    rng: &mut ChaCha8Rng,
) -> Result<Paths, SimError> {
    let g = [p.price, p.rate, p.borrow, p.inventory, p.holdings];
    for gi in &g {
        if !(gi.x0 > 0.0) {
            return Err(SimError::NonPositiveStart(gi.x0));
        }
        if !(gi.sigma >= 0.0) {
            return Err(SimError::NegativeVolatility(gi.sigma));
        }
    }
    let dt = 1.0 / TRADING_DAYS_PER_YEAR;
    let mut out: [Vec<f64>; 5] = core::array::from_fn(|j| {
        let mut v = Vec::with_capacity(n_days);
        v.push(g[j].x0);
        v
    });
    let mut x: [f64; 5] = core::array::from_fn(|j| g[j].x0);
    for _ in 1..n_days {
        let z: [f64; 5] = core::array::from_fn(|_| StandardNormal.sample(rng));
        let w = correlate(chol, &z);
        for j in 0..5 {
            x[j] = gbm_step(x[j], g[j].mu, g[j].sigma, dt, w[j]);
            out[j].push(x[j]);
        }
    }
    let [price, rate, borrow, inventory, holdings] = out;
    Ok(Paths {
        price,
        rate,
        borrow,
        inventory,
        holdings,
    })
}

/// Simulates every security's history from the given parameters. Security
/// `i` uses its own RNG stream, so results do not depend on generation order.
pub fn simulate_from_params(
    params: &[SecurityPathParams],
    n_days: usize,
    locate_model: LocateModel,
    correlation: Option<&[[f64; 5]; 5]>,
    seed: u64,
) -> Result<PortfolioTimeSeries, SimError> {
    if n_days == 0 {
        return Err(SimError::EmptyDimension("n_days"));
    }
    let chol = correlation.map(cholesky5).transpose()?;
    let mut records = Vec::with_capacity(params.len() * n_days);
    for (i, p) in params.iter().enumerate() {
        let mut rng = security_rng(seed, i);
        let paths = match &chol {
            None => independent_paths(p, n_days, &mut rng)?,
            Some(l) => correlated_paths(p, n_days, l, &mut rng)?,
        };
        let locates = match locate_model {
            LocateModel::AbsNormal => simulate_locates(p.locate_mean, p.locate_sd, n_days, &mut rng)?,
            LocateModel::Poisson => simulate_locates_poisson(p.locate_mean, n_days, &mut rng)?,
        };
        for t in 0..n_days {
            records.push(Observation {
                security: i,
                day: t,
                price: paths.price[t],
                rate: paths.rate[t],
                alt_rate: p.q * paths.rate[t],
                borrow: paths.borrow[t],
                locates: locates[t],
                inventory: paths.inventory[t],
                holdings: paths.holdings[t],
                delta: p.delta,
            });
        }
    }
    PortfolioTimeSeries::from_observations(params.len(), n_days, records)
}

/// Draws parameters and simulates the full dataset for `ranges.seed`.
pub fn simulate_portfolio(ranges: &SeedRanges) -> Result<Simulation, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(ranges.seed);
    let params = draw_security_params(ranges, &mut rng)?;
    let series = simulate_from_params(
        &params,
        ranges.n_days,
        ranges.locate_model,
        ranges.correlation.as_ref(),
        ranges.seed,
    )?;
    Ok(Simulation { params, series })
}

/// Simulated dataset for `ranges` (see [`simulate_portfolio`]).
pub fn build_portfolio_dataset(ranges: &SeedRanges) -> Result<PortfolioTimeSeries, SimError> {
    simulate_portfolio(ranges).map(|s| s.series)
}

/// Annualized drift and volatility implied by the daily log returns of a
/// positive series: `(m/Δt + v/(2Δt), sqrt(v/Δt))`, with `m`, `v` the sample
/// mean and variance of the log returns. `None` for fewer than three points.
pub fn realized_drift_vol(path: &[f64]) -> Option<(f64, f64)> {
    if path.len() < 3 || path.iter().any(|&x| !(x > 0.0)) {
        return None;
    }
    let r: Vec<f64> = path.windows(2).map(|w| math::ln(w[1] / w[0])).collect();
    let (m, v) = math::mean_variance(&r);
    let dt = 1.0 / TRADING_DAYS_PER_YEAR;
    Some((m / dt + 0.5 * v / dt, math::sqrt(v / dt)))
}
