//! Bidding when the number of rivals is uncertain.

use alloc::vec::Vec;

use crate::math;

use super::reserve::bid_reserve_general;
use super::{check_bidders, validate_beliefs, AuctionError, ValueDistribution};

/// Symmetric triangular beliefs over the number of rivals `l = 0..M−1`:
/// `p_l = l·Δ` for `l ≤ (M−1)/2` and `(M−l)·Δ` above, with `p_0 = 0`.
pub fn bidder_count_pmf(m: u32) -> Result<Vec<f64>, AuctionError> {
    check_bidders(m, 2)?;
    let half = (m - 1) as f64 / 2.0;
    let fl = math::floor(half);
    let frac = half - fl;
    let delta = 1.0 / (fl * (fl + 1.0) + (frac + half) * (2.0 * frac));
    Ok((0..m)
        .map(|l| {
            let l = l as f64;
            if l <= half {
                l * delta
            } else {
                (m as f64 - l) * delta
            }
        })
        .collect())
}

/// Bid with uncertain rival count: the average of the known-count bids
/// `β^l(x)`, weighted by `p_l G^l(x)`, the probability of facing `l` rivals
/// and beating all of them.
///
/// `bid(l, x)` is only called for counts with positive weight. When every
/// weight vanishes the bid is 0.
pub fn bid_variable_bidders<B, W>(x: f64, beliefs: &[f64], mut bid: B, mut win: W) -> Result<f64, AuctionError>
where
    B: FnMut(usize, f64) -> Result<f64, AuctionError>,
    W: FnMut(usize, f64) -> f64,
{
    if beliefs.is_empty() {
        return Err(AuctionError::InvalidBeliefs("no bidder counts"));
    }
    validate_beliefs(beliefs, beliefs.len() as u32)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (l, &p) in beliefs.iter().enumerate() {
        let w = p * win(l, x);
        if w > 0.0 {
            num += w * bid(l, x)?;
            den += w;
        }
    }
    Ok(if den > 0.0 { num / den } else { 0.0 })
}

/// Uniform values on `[0, ω]`:
/// `Σ_l p_l F(x)^l (l/(l+1)) x / Σ_k p_k F(x)^k`.
pub fn bid_variable_uniform(x: f64, beliefs: &[f64], omega: f64) -> Result<f64, AuctionError> {
    let dist = ValueDistribution::Uniform { omega };
    dist.validate()?;
    dist.check_in_support(x)?;
    let f = dist.cdf(x);
    bid_variable_bidders(
        x,
        beliefs,
        |l, x| Ok(l as f64 / (l + 1) as f64 * x),
        |l, _| math::powi(f, l as i32),
    )
}

/// Any value distribution with reserve `r ≥ 0`: each count uses the reserve
/// bid with `l + 1` bidders; with no rivals the bidder pays the reserve.
pub fn bid_variable_general(x: f64, r: f64, dist: &ValueDistribution, beliefs: &[f64]) -> Result<f64, AuctionError> {
    dist.validate()?;
    dist.check_in_support(x)?;
    if x < r {
        return Err(AuctionError::BelowReserve { x, r });
    }
    let f = dist.cdf(x);
    bid_variable_bidders(
        x,
        beliefs,
        |l, x| bid_reserve_general(x, r, dist, l as u32 + 1),
        |l, _| math::powi(f, l as i32),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auction::bid_uniform;

    #[test]
    fn pmf_examples() {
        assert_eq!(bidder_count_pmf(2).unwrap(), [0.0, 1.0]);
        assert_eq!(bidder_count_pmf(3).unwrap(), [0.0, 0.5, 0.5]);
        assert_eq!(bidder_count_pmf(4).unwrap(), [0.0, 0.25, 0.5, 0.25]);
        let p5 = bidder_count_pmf(5).unwrap();
        for (a, b) in p5.iter().zip([0.0, 1.0 / 6.0, 2.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(bidder_count_pmf(1).is_err());
    }

    #[test]
    fn pmf_is_normalized_and_symmetric() {
        for m in 2..=50u32 {
            let p = bidder_count_pmf(m).unwrap();
            assert_eq!(p.len(), m as usize);
            assert_eq!(p[0], 0.0);
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12, "m={m}");
            for l in 1..m as usize {
                assert_eq!(p[l], p[m as usize - l]);
            }
        }
    }

    #[test]
    fn variable_uniform() {
        let b = bid_variable_uniform(1.0, &[0.0, 0.5, 0.5], 1.0).unwrap();
        assert!((b - 7.0 / 12.0).abs() < 1e-15);
        // Degenerate beliefs select the fixed-count bid.
        let b = bid_variable_uniform(0.6, &[0.0, 0.0, 1.0, 0.0], 1.0).unwrap();
        assert!((b - bid_uniform(0.6, 3, 1.0).unwrap()).abs() < 1e-15);
        assert_eq!(bid_variable_uniform(0.0, &[0.0, 0.5, 0.5], 1.0).unwrap(), 0.0);
        assert!(bid_variable_uniform(0.5, &[0.5, 0.4], 1.0).is_err());
    }

    #[test]
    fn variable_general_matches_uniform() {
        let u = ValueDistribution::Uniform { omega: 1.0 };
        let p = bidder_count_pmf(6).unwrap();
        for k in 1..=10 {
            let x = k as f64 / 10.0;
            let a = bid_variable_general(x, 0.0, &u, &p).unwrap();
            let b = bid_variable_uniform(x, &p, 1.0).unwrap();
            assert!((a - b).abs() < 1e-10);
            // Convex combination of the known-count bids.
            assert!(a >= x / 2.0 - 1e-12 && a <= x * 5.0 / 6.0 + 1e-12);
        }
        assert!(bid_variable_general(0.2, 0.3, &u, &p).is_err());
        let with_reserve = bid_variable_general(0.5, 0.3, &u, &p).unwrap();
        assert!(with_reserve >= bid_variable_general(0.5, 0.0, &u, &p).unwrap());
    }
}
