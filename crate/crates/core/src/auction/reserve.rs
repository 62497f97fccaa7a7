//! Symmetric private values with a reserve price, and the seller's optimal
//! reserve.

use crate::math;
use crate::numerics::{normal_cdf, RootFinder};

use super::symmetric::{integrate, uniform_no_reserve};
use super::{check_bidders, AuctionError, ValueDistribution};

fn check_reserve(x: f64, r: f64, dist: &ValueDistribution, m: u32) -> Result<(), AuctionError> {
    dist.validate()?;
    check_bidders(m, 1)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(AuctionError::InvalidParameter { name: "reserve", value: r });
    }
    dist.check_in_support(x)?;
    if x < r {
        return Err(AuctionError::BelowReserve { x, r });
    }
    Ok(())
}

/// Equilibrium bid with a reserve `r`:
/// `β(x) = [r G(r) + ∫_r^x y g(y) dy] / G(x)` for `x ≥ r`.
///
/// A sole bidder (`M = 1`) pays the reserve.
pub fn bid_reserve_general(x: f64, r: f64, dist: &ValueDistribution, m: u32) -> Result<f64, AuctionError> {
    check_reserve(x, r, dist, m)?;
    if m == 1 || x == r {
        return Ok(r);
    }
    let gx = dist.rival_cdf(x, m);
    if !(gx > 0.0) {
        return Err(AuctionError::NumericFailure("winning probability underflows at x"));
    }
    // Normalized by G(x) inside the integral so the tolerance is relative to x.
    let paid = integrate(dist, |y| y * dist.rival_pdf(y, m) / gx, r, x)?;
    Ok(r * (dist.rival_cdf(r, m) / gx) + paid)
}

/// Integration-by-parts form `x − ∫_r^x G(y)/G(x) dy` of the same bid.
#[cfg(test)]
pub(crate) fn bid_reserve_by_parts(x: f64, r: f64, dist: &ValueDistribution, m: u32) -> Result<f64, AuctionError> {
    check_reserve(x, r, dist, m)?;
    if m == 1 || x == r {
        return Ok(r);
    }
    let shortfall = integrate(dist, |y| dist.conditional_cdf(y, x, m), r, x)?;
    Ok(x - shortfall)
}

/// Uniform values on `[0, ω]`: `β(x) = r^M/(M x^{M−1}) + (M − 1)x/M`.
///
/// The reserve term is non-negative and is added to the no-reserve bid as
/// computed by [`super::bid_uniform`], so this bid is never below it.
pub fn bid_reserve_uniform(x: f64, r: f64, m: u32, omega: f64) -> Result<f64, AuctionError> {
    check_reserve(x, r, &ValueDistribution::Uniform { omega }, m)?;
    if x == r {
        return Ok(r);
    }
    let reserve_term = r * math::powi(r / x, m as i32 - 1) / m as f64;
    Ok(uniform_no_reserve(x, m) + reserve_term)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ReserveMethod {
    /// First-order expansion `x − (G(r)/G(x))(x − r)`.
    Taylor,
    /// Quadrature of the general reserve bid.
    Numeric,
}

fn lognormal_reserve_args(x: f64, r: f64, mu: f64, sigma: f64, m: u32) -> Result<ValueDistribution, AuctionError> {
    if !(r > 0.0) {
        return Err(AuctionError::InvalidParameter { name: "reserve", value: r });
    }
    let dist = ValueDistribution::LogNormal { mu, sigma };
    check_reserve(x, r, &dist, m)?;
    Ok(dist)
}

/// Log-normal values with reserve `r > 0`.
pub fn bid_reserve_lognormal(
    x: f64,
    r: f64,
    mu: f64,
    sigma: f64,
    m: u32,
    method: ReserveMethod,
) -> Result<f64, AuctionError> {
    let dist = lognormal_reserve_args(x, r, mu, sigma, m)?;
    match method {
        ReserveMethod::Numeric => bid_reserve_general(x, r, &dist, m),
        ReserveMethod::Taylor => {
            if m == 1 || x == r {
                return Ok(r);
            }
            let ratio = dist.conditional_cdf(r, x, m);
            Ok(x - ratio * (x - r))
        }
    }
}

/// The expansion as printed with the derivative `h′(r)` in place of `h(r)`:
/// `h′(r)·x(x − r)/h(x) + r h(r)/h(x)` with `h(y) = (√(2π) Φ(z_y))^{M−1}`.
///
/// Kept for comparison only; it does not approximate the equilibrium bid.
pub fn bid_reserve_lognormal_printed(x: f64, r: f64, mu: f64, sigma: f64, m: u32) -> Result<f64, AuctionError> {
    lognormal_reserve_args(x, r, mu, sigma, m)?;
    if m == 1 {
        return Ok(r);
    }
    let root_2pi = math::sqrt(2.0 * core::f64::consts::PI);
    let zr = (math::ln(r) - mu) / sigma;
    let zx = (math::ln(x) - mu) / sigma;
    let k = m as i32 - 1;
    let hx = math::powi(root_2pi * normal_cdf(zx), k);
    let hr = math::powi(root_2pi * normal_cdf(zr), k);
    let dh = k as f64 * math::powi(root_2pi * normal_cdf(zr), k - 1) * math::exp(-0.5 * zr * zr) / (r * sigma);
    Ok(dh * x * (x - r) / hx + r * hr / hx)
}

/// Seller's optimal reserve: the root of `r − (1 − F(r))/f(r) = x_s` on
/// `(x_s, upper)`.
pub fn optimal_reserve(x_s: f64, dist: &ValueDistribution) -> Result<f64, AuctionError> {
    dist.validate()?;
    let hi = dist.upper();
    if !(x_s >= 0.0 && x_s < hi) {
        return Err(AuctionError::InvalidParameter { name: "seller_value", value: x_s });
    }
    let psi = |r: f64| {
        let f = dist.pdf(r);
        let tail = 1.0 - dist.cdf(r);
        if f > 0.0 {
            r - tail / f - x_s
        } else if tail <= 0.0 {
            // Top of a support where the density vanishes with the tail.
            r - x_s
        } else {
            // Zero density inside the support: the virtual value is −∞.
            -1e300
        }
    };
    let finder = RootFinder {
        x_tol: 0.0,
        f_tol: 1e-12 * hi.min(1.0),
        max_iter: 2000,
    };
    match finder.solve(psi, x_s, hi) {
        Ok(res) => Ok(res.root),
        Err(crate::numerics::NumericsError::NoBracket { .. }) => Err(AuctionError::NoReserveSolution { x_s }),
        Err(e) => Err(e.into()),
    }
}
