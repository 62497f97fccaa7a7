//! Bidder value distributions and the order-statistic quantities built on them.

use crate::math;
use crate::numerics::{normal_cdf, normal_pdf};

use super::AuctionError;

/// Standard normal quantile at `1 − 10⁻¹²`; log-normal integrals stop at
/// `exp(μ + σ·z)` for this `z`.
pub const LOGNORMAL_TAIL_Z: f64 = 7.034_483_825_301_131;

/// Distribution of a single bidder's value.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum ValueDistribution {
    /// Uniform on `[0, ω]`.
    Uniform { omega: f64 },
    /// `ln X ~ N(μ, σ²)`.
    LogNormal { mu: f64, sigma: f64 },
    /// Sum of two independent uniform(0,1) values: triangular on `[0, 2]`.
    IrwinHall2,
}

impl ValueDistribution {
    pub fn validate(&self) -> Result<(), AuctionError> {
        match *self {
            ValueDistribution::Uniform { omega } => {
                if !(omega > 0.0 && omega.is_finite()) {
                    return Err(AuctionError::InvalidParameter { name: "omega", value: omega });
                }
            }
            ValueDistribution::LogNormal { mu, sigma } => {
                if !mu.is_finite() {
                    return Err(AuctionError::InvalidParameter { name: "mu", value: mu });
                }
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return Err(AuctionError::InvalidParameter { name: "sigma", value: sigma });
                }
            }
            ValueDistribution::IrwinHall2 => {}
        }
        Ok(())
    }

    /// `F(x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            ValueDistribution::Uniform { omega } => (x / omega).clamp(0.0, 1.0),
            ValueDistribution::LogNormal { mu, sigma } => {
                if x <= 0.0 {
                    0.0
                } else {
                    normal_cdf((math::ln(x) - mu) / sigma)
                }
            }
            ValueDistribution::IrwinHall2 => {
                if x <= 0.0 {
                    0.0
                } else if x < 1.0 {
                    0.5 * x * x
                } else if x <= 2.0 {
                    2.0 * x - 1.0 - 0.5 * x * x
                } else {
                    1.0
                }
            }
        }
    }

    /// `f(x)`.
    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            ValueDistribution::Uniform { omega } => {
                if (0.0..=omega).contains(&x) {
                    1.0 / omega
                } else {
                    0.0
                }
            }
            ValueDistribution::LogNormal { mu, sigma } => {
                if x <= 0.0 {
                    0.0
                } else {
                    normal_pdf((math::ln(x) - mu) / sigma) / (sigma * x)
                }
            }
            ValueDistribution::IrwinHall2 => {
                if !(0.0..=2.0).contains(&x) {
                    0.0
                } else if x < 1.0 {
                    x
                } else {
                    2.0 - x
                }
            }
        }
    }

    /// Upper end of the support used for integration; the `1 − 10⁻¹²`
    /// quantile for the log-normal.
    pub fn upper(&self) -> f64 {
        match *self {
            ValueDistribution::Uniform { omega } => omega,
            ValueDistribution::LogNormal { mu, sigma } => math::exp(mu + sigma * LOGNORMAL_TAIL_Z),
            ValueDistribution::IrwinHall2 => 2.0,
        }
    }

    /// `[0, upper]`.
    pub fn support(&self) -> (f64, f64) {
        (0.0, self.upper())
    }

    /// Interior points where the density has a kink.
    pub fn breakpoints(&self) -> &'static [f64] {
        match self {
            ValueDistribution::IrwinHall2 => &[1.0],
            _ => &[],
        }
    }

    pub(crate) fn check_in_support(&self, x: f64) -> Result<(), AuctionError> {
        let (lo, hi) = self.support();
        // The log-normal has unbounded support; only the lower end is enforced.
        let hi_ok = matches!(self, ValueDistribution::LogNormal { .. }) || x <= hi;
        if x.is_finite() && x >= lo && hi_ok {
            Ok(())
        } else {
            Err(AuctionError::OutsideSupport { x, lo, hi })
        }
    }

    /// Distribution of the highest of `M − 1` rival values: `G(y) = F(y)^{M−1}`.
    pub fn rival_cdf(&self, y: f64, m: u32) -> f64 {
        math::powi(self.cdf(y), m as i32 - 1)
    }

    /// `g(y) = (M − 1) F(y)^{M−2} f(y)`.
    pub fn rival_pdf(&self, y: f64, m: u32) -> f64 {
        if m < 2 {
            return 0.0;
        }
        (m - 1) as f64 * math::powi(self.cdf(y), m as i32 - 2) * self.pdf(y)
    }

    /// `g(y|y)/G(y|y) = (M − 1) f(y)/F(y)`.
    pub fn reverse_hazard(&self, y: f64, m: u32) -> f64 {
        let f = self.cdf(y);
        if f <= 0.0 {
            return f64::INFINITY;
        }
        (m - 1) as f64 * self.pdf(y) / f
    }

    /// `G(y|x) = P(Y₁ ≤ y | Y₁ < x) = (F(y)/F(x))^{M−1}` for `y ≤ x`, 1 above.
    /// With independent values this is also the envelope `L(y|x)`.
    pub fn conditional_cdf(&self, y: f64, x: f64, m: u32) -> f64 {
        if y >= x {
            return 1.0;
        }
        let fx = self.cdf(x);
        if fx <= 0.0 {
            return 1.0;
        }
        math::powi(self.cdf(y) / fx, m as i32 - 1)
    }

    /// `g(y|x) = (M − 1)(F(y)/F(x))^{M−2} f(y)/F(x)` for `y < x`, 0 above.
    pub fn conditional_pdf(&self, y: f64, x: f64, m: u32) -> f64 {
        let fx = self.cdf(x);
        if y >= x || fx <= 0.0 || m < 2 {
            return 0.0;
        }
        (m - 1) as f64 * math::powi(self.cdf(y) / fx, m as i32 - 2) * self.pdf(y) / fx
    }

    /// `L(y|x) = exp(−∫_y^x g(t|t)/G(t|t) dt)`.
    pub fn envelope(&self, y: f64, x: f64, m: u32) -> f64 {
        self.conditional_cdf(y, x, m)
    }
}
