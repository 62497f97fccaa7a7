//! Seed ranges and per-security path parameters.

use rand::Rng;

use super::SimError;

/// Closed sampling interval `[lo, hi]`; a degenerate interval always yields `lo`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub const fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        self.lo + (self.hi - self.lo) * u
    }

    fn check(&self, name: &'static str) -> Result<(), SimError> {
        if self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi {
            Ok(())
        } else {
            Err(SimError::InvalidInterval {
                name,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}

/// Distribution of daily locate requests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LocateModel {
    /// `|N(μ_L, σ_L²)|`.
    #[default]
    AbsNormal,
    /// `Poisson(μ_L)`; `σ_L` is ignored.
    Poisson,
}

/// Drift and volatility (per annum) of one log-normal series.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GbmParams {
    pub x0: f64,
    pub mu: f64,
    pub sigma: f64,
}

/// Parameters of one security's simulated history.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SecurityPathParams {
    pub price: GbmParams,
    pub rate: GbmParams,
    pub borrow: GbmParams,
    pub inventory: GbmParams,
    pub holdings: GbmParams,
    pub locate_mean: f64,
    pub locate_sd: f64,
    /// Conversion rate of locates into borrows.
    pub delta: f64,
    /// Alternate-rate spread: `Q = q·R`.
    pub q: f64,
}

/// Uniform ranges from which security parameters are drawn, plus the
/// dataset shape and run-level constants.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SeedRanges {
    pub n_securities: usize,
    pub n_days: usize,
    pub seed: u64,
    /// Discount factor β.
    pub discount: f64,
    /// Transaction cost per state change per security.
    pub cost: f64,

    pub price0: Interval,
    pub price_mu: Interval,
    pub price_sigma: Interval,
    pub rate0: Interval,
    pub rate_mu: Interval,
    pub rate_sigma: Interval,
    pub borrow0: Interval,
    pub borrow_mu: Interval,
    pub borrow_sigma: Interval,
    pub inventory0: Interval,
    pub inventory_mu: Interval,
    pub inventory_sigma: Interval,
    pub holdings0: Interval,
    pub holdings_mu: Interval,
    pub holdings_sigma: Interval,
    pub locate_mean: Interval,
    pub locate_sd: Interval,
    pub delta: Interval,
    pub q: Interval,

    pub locate_model: LocateModel,
    /// Optional correlation of the daily innovations of (S, R, B, I, H).
    /// `None` simulates the five series independently.
    pub correlation: Option<[[f64; 5]; 5]>,
}

impl Default for SeedRanges {
    fn default() -> Self {
        Self {
            n_securities: 100,
            n_days: 252,
            seed: 20_150_901,
            discount: 1.0,
            cost: 0.0,

            price0: Interval::new(10.0, 100.0),
            price_mu: Interval::new(-0.05, 0.10),
            price_sigma: Interval::new(0.10, 0.30),
            rate0: Interval::new(0.002, 0.02),
            rate_mu: Interval::new(-0.20, 0.0),
            rate_sigma: Interval::new(0.10, 0.30),
            borrow0: Interval::new(40_000.0, 120_000.0),
            borrow_mu: Interval::new(-0.30, 0.10),
            borrow_sigma: Interval::new(0.60, 1.20),
            inventory0: Interval::new(20_000.0, 80_000.0),
            inventory_mu: Interval::new(0.0, 0.20),
            inventory_sigma: Interval::new(0.30, 0.60),
            holdings0: Interval::new(50_000.0, 150_000.0),
            holdings_mu: Interval::new(0.10, 0.40),
            holdings_sigma: Interval::new(0.30, 0.50),
            locate_mean: Interval::new(0.0, 40_000.0),
            locate_sd: Interval::new(5_000.0, 20_000.0),
            delta: Interval::new(0.2, 0.6),
            q: Interval::new(0.4, 0.9),

            locate_model: LocateModel::AbsNormal,
            correlation: None,
        }
    }
}

impl SeedRanges {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_securities == 0 {
            return Err(SimError::EmptyDimension("n_securities"));
        }
        if self.n_days == 0 {
            return Err(SimError::EmptyDimension("n_days"));
        }
        if !(self.discount > 0.0 && self.discount <= 1.0) {
            return Err(SimError::InvalidDiscount(self.discount));
        }
        if !(self.cost >= 0.0 && self.cost.is_finite()) {
            return Err(SimError::InvalidCost(self.cost));
        }
        let intervals = [
            (self.price0, "price0"),
            (self.price_mu, "price_mu"),
            (self.price_sigma, "price_sigma"),
            (self.rate0, "rate0"),
            (self.rate_mu, "rate_mu"),
            (self.rate_sigma, "rate_sigma"),
            (self.borrow0, "borrow0"),
            (self.borrow_mu, "borrow_mu"),
            (self.borrow_sigma, "borrow_sigma"),
            (self.inventory0, "inventory0"),
            (self.inventory_mu, "inventory_mu"),
            (self.inventory_sigma, "inventory_sigma"),
            (self.holdings0, "holdings0"),
            (self.holdings_mu, "holdings_mu"),
            (self.holdings_sigma, "holdings_sigma"),
            (self.locate_mean, "locate_mean"),
            (self.locate_sd, "locate_sd"),
            (self.delta, "delta"),
            (self.q, "q"),
        ];
        for (iv, name) in intervals {
            iv.check(name)?;
        }
        let positive = [
            (self.price0, "price0"),
            (self.rate0, "rate0"),
            (self.borrow0, "borrow0"),
            (self.inventory0, "inventory0"),
            (self.holdings0, "holdings0"),
        ];
        for (iv, name) in positive {
            if iv.lo <= 0.0 {
                return Err(SimError::OutOfDomain { name, lo: iv.lo, hi: iv.hi });
            }
        }
        let nonneg = [
            (self.price_sigma, "price_sigma"),
            (self.rate_sigma, "rate_sigma"),
            (self.borrow_sigma, "borrow_sigma"),
            (self.inventory_sigma, "inventory_sigma"),
            (self.holdings_sigma, "holdings_sigma"),
            (self.locate_sd, "locate_sd"),
        ];
        for (iv, name) in nonneg {
            if iv.lo < 0.0 {
                return Err(SimError::OutOfDomain { name, lo: iv.lo, hi: iv.hi });
            }
        }
        for (iv, name) in [(self.delta, "delta"), (self.q, "q")] {
            if iv.lo < 0.0 || iv.hi > 1.0 {
                return Err(SimError::OutOfDomain { name, lo: iv.lo, hi: iv.hi });
            }
        }
        if self.locate_model == LocateModel::Poisson && self.locate_mean.lo < 0.0 {
            return Err(SimError::OutOfDomain {
                name: "locate_mean",
                lo: self.locate_mean.lo,
                hi: self.locate_mean.hi,
            });
        }
        if let Some(c) = &self.correlation {
            super::correlation::cholesky5(c)?;
        }
        Ok(())
    }
}

/// Draws one parameter set per security, each field uniform in its interval.
pub fn draw_security_params<R: Rng + ?Sized>(
    ranges: &SeedRanges,
    rng: &mut R,
) -> Result<alloc::vec::Vec<SecurityPathParams>, SimError> {
    ranges.validate()?;
    let gbm = |x0: Interval, mu: Interval, sigma: Interval, rng: &mut R| GbmParams {
        x0: x0.sample(rng),
        mu: mu.sample(rng),
        sigma: sigma.sample(rng),
    };
    let mut out = alloc::vec::Vec::with_capacity(ranges.n_securities);
    for _ in 0..ranges.n_securities {
        out.push(SecurityPathParams {
            price: gbm(ranges.price0, ranges.price_mu, ranges.price_sigma, rng),
            rate: gbm(ranges.rate0, ranges.rate_mu, ranges.rate_sigma, rng),
            borrow: gbm(ranges.borrow0, ranges.borrow_mu, ranges.borrow_sigma, rng),
            inventory: gbm(ranges.inventory0, ranges.inventory_mu, ranges.inventory_sigma, rng),
            holdings: gbm(ranges.holdings0, ranges.holdings_mu, ranges.holdings_sigma, rng),
            locate_mean: ranges.locate_mean.sample(rng),
            locate_sd: ranges.locate_sd.sample(rng),
            delta: ranges.delta.sample(rng),
            q: ranges.q.sample(rng),
        });
    }
    Ok(out)
}
