//! Tabulated equilibrium strategies with diagnostics.

use alloc::vec::Vec;

use crate::math;

use super::{
    bid_combined_realistic, bid_reserve_general, screening_level, AsymmetricEquilibrium, AuctionError,
    ValueDistribution,
};

/// One grid point of a bid curve.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BidPoint {
    pub x: f64,
    pub bid: f64,
    /// Absolute residual of the equilibrium first-order condition at `x`.
    pub foc_residual: f64,
}

/// Bid at the lowest participating value against its boundary condition.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundaryCheck {
    pub x: f64,
    pub expected: f64,
    pub actual: f64,
}

impl BoundaryCheck {
    pub fn error(&self) -> f64 {
        math::abs(self.actual - self.expected)
    }
}

/// Equilibrium bid `β(x)` on a grid of values.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BidCurve {
    pub points: Vec<BidPoint>,
    pub boundary: BoundaryCheck,
    /// Bids never decrease along the grid.
    pub monotone: bool,
    /// Every bid is at most the bidder's value at that point.
    pub below_value: bool,
    pub max_residual: f64,
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, AuctionError> {
    if n < 2 {
        return Err(AuctionError::InvalidParameter { name: "grid_points", value: n as f64 });
    }
    Ok((0..n)
        .map(|k| if k == n - 1 { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 })
        .collect())
}

/// Central difference of `f` at `x`, one-sided at the ends of `[lo, hi]`.
fn slope<F>(f: &F, x: f64, lo: f64, hi: f64, h: f64) -> Result<f64, AuctionError>
where
    F: Fn(f64) -> Result<f64, AuctionError>,
{
    let a = (x - h).max(lo);
    let b = (x + h).min(hi);
    Ok((f(b)? - f(a)?) / (b - a))
}

impl BidCurve {
    fn assemble<V: Fn(f64) -> f64>(points: Vec<BidPoint>, expected: f64, value: V) -> Self {
        let first = points[0];
        let monotone = points.windows(2).all(|w| w[1].bid >= w[0].bid);
        let below_value = points.iter().all(|p| p.bid <= value(p.x));
        let max_residual = points.iter().map(|p| p.foc_residual).fold(0.0, f64::max);
        BidCurve {
            boundary: BoundaryCheck {
                x: first.x,
                expected,
                actual: first.bid,
            },
            points,
            monotone,
            below_value,
            max_residual,
        }
    }

    /// Private values with `m` symmetric bidders and reserve `r`, on `n`
    /// points of `[r, upper]`. Residual: `|β′G − (x − β)g|`.
    pub fn private_values(dist: &ValueDistribution, m: u32, r: f64, n: usize) -> Result<Self, AuctionError> {
        dist.validate()?;
        let hi = dist.upper();
        let bid = |x: f64| bid_reserve_general(x, r, dist, m);
        let h = 1e-6 * hi;
        let mut points = Vec::with_capacity(n);
        for x in grid(r, hi, n)? {
            let b = bid(x)?;
            let db = slope(&bid, x, r, hi, h)?;
            let res = db * dist.rival_cdf(x, m) - (x - b) * dist.rival_pdf(x, m);
            points.push(BidPoint {
                x,
                bid: b,
                foc_residual: math::abs(res),
            });
        }
        Ok(Self::assemble(points, r, |x| x))
    }

    /// Interdependent Irwin–Hall signals with reserve `r`, on `n` points of
    /// `[x*(r), 2]`. Residual: `|β′ − (υ(x,x) − β) P(x)|`.
    pub fn interdependent(m: u32, alpha: f64, xi: f64, r: f64, n: usize) -> Result<Self, AuctionError> {
        let ih = ValueDistribution::IrwinHall2;
        let x_star = screening_level(r, m, alpha, xi)?;
        let bid = |x: f64| bid_combined_realistic(x, r, m, alpha, xi);
        let h = 1e-6;
        let mut points = Vec::with_capacity(n);
        for x in grid(x_star, 2.0, n)? {
            let b = bid(x)?;
            // P(y) = (M−1) f/F is singular at 0; the residual is taken at the
            // nearest interior point there.
            let at = if x == 0.0 { h } else { x };
            let db = slope(&bid, at, x_star, 2.0, h)?;
            let b_at = if at == x { b } else { bid(at)? };
            let res = db - ((alpha + xi) * at - b_at) * ih.reverse_hazard(at, m);
            points.push(BidPoint {
                x,
                bid: b,
                foc_residual: math::abs(res),
            });
        }
        Ok(Self::assemble(points, r, |x| (alpha + xi) * x))
    }

    /// One group of an asymmetric equilibrium on `n` points of its support.
    /// Residual: the first-order condition of that group at the bid.
    pub fn asymmetric(eq: &AsymmetricEquilibrium, group: usize, n: usize) -> Result<Self, AuctionError> {
        if group > 1 {
            return Err(AuctionError::InvalidParameter { name: "group", value: group as f64 });
        }
        let hi = eq.dists[group].upper();
        let lo_bid = eq.min_bid() * (1.0 + 1e-3) + 1e-6 * eq.max_bid;
        let hi_bid = eq.max_bid * (1.0 - 1e-6);
        let mut points = Vec::with_capacity(n);
        for x in grid(0.0, hi, n)? {
            let b = eq.bid(group, x)?;
            let foc_residual = eq.foc_residuals_at(b.clamp(lo_bid, hi_bid))[group];
            points.push(BidPoint { x, bid: b, foc_residual });
        }
        Ok(Self::assemble(points, 0.0, |x| x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auction::solve_asymmetric_two_group;

    #[test]
    fn private_curve_diagnostics() {
        let u = ValueDistribution::Uniform { omega: 1.0 };
        for r in [0.0, 0.3] {
            let c = BidCurve::private_values(&u, 4, r, 101).unwrap();
            assert_eq!(c.points.len(), 101);
            assert!(c.monotone && c.below_value);
            assert_eq!(c.boundary.error(), 0.0);
            assert!(c.max_residual < 1e-6, "{}", c.max_residual);
            assert_eq!(c.points[100].x, 1.0);
        }
        assert!(BidCurve::private_values(&u, 4, 0.0, 1).is_err());
    }

    #[test]
    fn interdependent_curve_diagnostics() {
        for r in [0.0, 0.8] {
            let c = BidCurve::interdependent(3, 0.5, 0.5, r, 201).unwrap();
            assert!(c.monotone && c.below_value);
            assert!(c.boundary.error() < 1e-12);
            assert!(c.max_residual < 1e-5, "r={r}: {}", c.max_residual);
        }
    }

    #[test]
    fn asymmetric_curve_diagnostics() {
        let eq = solve_asymmetric_two_group(
            &ValueDistribution::Uniform { omega: 1.0 },
            &ValueDistribution::Uniform { omega: 2.0 },
            2,
            1,
        )
        .unwrap();
        for g in 0..2 {
            let c = BidCurve::asymmetric(&eq, g, 51).unwrap();
            assert!(c.monotone && c.below_value);
            assert!(c.max_residual < 1e-6);
        }
    }
}
