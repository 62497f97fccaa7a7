//! Symmetric independent private values without a reserve.

use crate::math;
use crate::numerics::{Quadrature, RootFinder};

use super::{check_bidders, AuctionError, ValueDistribution};

/// Absolute quadrature tolerance for bid integrals over `[0, x]`, tightened
/// for small `x` so that relative accuracy does not degrade.
pub(crate) fn bid_quadrature(x: f64) -> Quadrature {
    Quadrature::default().with_abs_tol(1e-15 * x.abs().clamp(1e-300, 1.0)).with_rel_tol(1e-13)
}

pub(crate) fn integrate<F: FnMut(f64) -> f64>(
    dist: &ValueDistribution,
    f: F,
    a: f64,
    b: f64,
) -> Result<f64, AuctionError> {
    Ok(bid_quadrature(b).integrate_with_breaks(f, a, b, dist.breakpoints())?.value)
}

/// Equilibrium bid with `M` symmetric bidders:
/// `β(x) = x − ∫₀ˣ (F(y)/F(x))^{M−1} dy = E[Y₁ | Y₁ < x]`.
pub fn bid_symmetric_general(x: f64, dist: &ValueDistribution, m: u32) -> Result<f64, AuctionError> {
    dist.validate()?;
    check_bidders(m, 2)?;
    dist.check_in_support(x)?;
    let fx = dist.cdf(x);
    if fx <= 0.0 {
        return Ok(0.0);
    }
    let k = m as i32 - 1;
    let shortfall = integrate(dist, |y| math::powi(dist.cdf(y) / fx, k), 0.0, x)?;
    Ok(x - shortfall)
}

/// Uniform values: `β(x) = (M − 1)x/M`. The bid does not depend on `ω`.
pub fn bid_uniform(x: f64, m: u32, omega: f64) -> Result<f64, AuctionError> {
    check_bidders(m, 2)?;
    if !(omega > 0.0) {
        return Err(AuctionError::InvalidParameter { name: "omega", value: omega });
    }
    if !(0.0..=omega).contains(&x) {
        return Err(AuctionError::OutsideSupport { x, lo: 0.0, hi: omega });
    }
    Ok(uniform_no_reserve(x, m))
}

#[inline]
pub(crate) fn uniform_no_reserve(x: f64, m: u32) -> f64 {
    x * (m - 1) as f64 / m as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LogNormalMethod {
    /// Series approximation `β(x) ≈ x/2`, independent of `M`.
    Approx,
    /// Quadrature of the general symmetric bid.
    Numeric,
}

/// Log-normal values.
pub fn bid_lognormal(x: f64, mu: f64, sigma: f64, m: u32, method: LogNormalMethod) -> Result<f64, AuctionError> {
    let dist = ValueDistribution::LogNormal { mu, sigma };
    dist.validate()?;
    check_bidders(m, 2)?;
    match method {
        LogNormalMethod::Approx => Ok(if x > 0.0 { 0.5 * x } else { 0.0 }),
        LogNormalMethod::Numeric => bid_symmetric_general(x, &dist, m),
    }
}

/// Ex-ante expected payment of one bidder and the seller's expected revenue.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpectedRevenue {
    /// `E[m(X)] = ∫ y (1 − F(y)) g(y) dy`.
    pub payment: f64,
    /// `M · E[m(X)]`.
    pub revenue: f64,
    /// Bound on the payment omitted by truncating an unbounded support.
    pub truncation_bound: f64,
}

pub fn expected_revenue(dist: &ValueDistribution, m: u32) -> Result<ExpectedRevenue, AuctionError> {
    dist.validate()?;
    check_bidders(m, 2)?;
    let hi = dist.upper();
    let payment = Quadrature::default()
        .with_abs_tol(1e-12 * hi.min(1.0))
        .with_rel_tol(1e-12)
        .integrate_with_breaks(|y| y * (1.0 - dist.cdf(y)) * dist.rival_pdf(y, m), 0.0, hi, dist.breakpoints())?
        .value;
    let truncation_bound = match *dist {
        // (M − 1) E[X; X > U] bounds the omitted tail.
        ValueDistribution::LogNormal { mu, sigma } => {
            (m - 1) as f64
                * math::exp(mu + 0.5 * sigma * sigma)
                * (1.0 - crate::numerics::normal_cdf(super::LOGNORMAL_TAIL_Z - sigma))
        }
        _ => 0.0,
    };
    if !payment.is_finite() {
        return Err(AuctionError::NumericFailure("expected payment is not finite"));
    }
    Ok(ExpectedRevenue {
        payment,
        revenue: m as f64 * payment,
        truncation_bound,
    })
}

/// Value whose equilibrium bid is `b`, i.e. `φ(b) = β⁻¹(b)`; saturates at the
/// top of the support.
pub fn inverse_bid(b: f64, dist: &ValueDistribution, m: u32) -> Result<f64, AuctionError> {
    let hi = dist.upper();
    if b <= 0.0 {
        return Ok(0.0);
    }
    if b >= bid_symmetric_general(hi, dist, m)? {
        return Ok(hi);
    }
    let mut err = None;
    let r = RootFinder::new(1e-14 * hi, 0.0).solve(
        |x| match bid_symmetric_general(x, dist, m) {
            Ok(v) => v - b,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        },
        0.0,
        hi,
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(r?.root)
}

/// Interim expected payoff `G(φ(b))·(x − b)` of bidding `b` with value `x`
/// when every rival follows the symmetric equilibrium.
pub fn expected_payoff(x: f64, b: f64, dist: &ValueDistribution, m: u32) -> Result<f64, AuctionError> {
    let phi = inverse_bid(b, dist, m)?;
    Ok(dist.rival_cdf(phi, m) * (x - b))
}

#[cfg(test)]
mod tests {
    use super::*;

    const U1: ValueDistribution = ValueDistribution::Uniform { omega: 1.0 };

    #[test]
    fn uniform_examples() {
        assert_eq!(bid_uniform(1.0, 2, 1.0).unwrap(), 0.5);
        assert!((bid_uniform(0.5, 10, 1.0).unwrap() - 0.45).abs() < 1e-16);
        assert!((bid_uniform(0.37, 1_000_000, 1.0).unwrap() - 0.37).abs() < 1e-6);
        assert!(bid_uniform(1.5, 2, 1.0).is_err());
        assert!(bid_uniform(0.5, 1, 1.0).is_err());
    }

    #[test]
    fn general_matches_uniform_closed_form() {
        for m in 2..=12u32 {
            for k in 0..=20 {
                let x = k as f64 / 20.0;
                let q = bid_symmetric_general(x, &U1, m).unwrap();
                assert!((q - bid_uniform(x, m, 1.0).unwrap()).abs() < 1e-10, "m={m} x={x}");
            }
        }
        assert_eq!(bid_symmetric_general(0.0, &U1, 3).unwrap(), 0.0);
        assert!(bid_symmetric_general(1e-9, &U1, 3).unwrap() < 1e-9);
    }

    #[test]
    fn lognormal_methods() {
        assert_eq!(bid_lognormal(0.005, -5.5, 0.5, 5, LogNormalMethod::Approx).unwrap(), 0.0025);
        assert_eq!(bid_lognormal(0.0, -5.5, 0.5, 5, LogNormalMethod::Approx).unwrap(), 0.0);
        for m in [2, 3, 10] {
            assert_eq!(bid_lognormal(0.004, -5.5, 0.5, m, LogNormalMethod::Approx).unwrap(), 0.002);
        }
        let b = bid_lognormal(0.005, -5.5, 0.5, 5, LogNormalMethod::Numeric).unwrap();
        assert!(b > 0.0 && b < 0.005);
    }

    #[test]
    fn revenue_examples() {
        let r = expected_revenue(&U1, 2).unwrap();
        assert!((r.payment - 1.0 / 6.0).abs() < 1e-12);
        assert!((r.revenue - 1.0 / 3.0).abs() < 1e-12);
        let r = expected_revenue(&U1, 3).unwrap();
        assert!((r.payment - 1.0 / 6.0).abs() < 1e-12);
        assert!((r.revenue - 0.5).abs() < 1e-12);
        let r2 = expected_revenue(&ValueDistribution::Uniform { omega: 2.0 }, 3).unwrap();
        assert!((r2.payment - 2.0 * r.payment).abs() < 1e-12);
        assert_eq!(r.truncation_bound, 0.0);
        let ln = expected_revenue(&ValueDistribution::LogNormal { mu: -5.5, sigma: 0.5 }, 4).unwrap();
        assert!(ln.truncation_bound > 0.0 && ln.truncation_bound < 1e-12);
    }

    #[test]
    fn inverse_and_payoff() {
        let x = inverse_bid(0.3, &U1, 3).unwrap();
        assert!((x - 0.45).abs() < 1e-12);
        assert_eq!(inverse_bid(0.9, &U1, 3).unwrap(), 1.0);
        let at_eq = expected_payoff(0.6, 0.4, &U1, 3).unwrap();
        assert!(at_eq > expected_payoff(0.6, 0.35, &U1, 3).unwrap());
        assert!(at_eq > expected_payoff(0.6, 0.45, &U1, 3).unwrap());
    }
}
