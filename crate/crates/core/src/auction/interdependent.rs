//! Interdependent values with Irwin–Hall signals, alone and combined with a
//! reserve price and an uncertain number of bidders.
//!
//! Each bidder's signal `X` is the sum of two uniform(0,1) draws, so `X` is
//! triangular on `[0, 2]`, and its value is `υ(x, y) = αx + ξy` where `y` is
//! the highest rival signal. With `P(y) = (M−1) f(y)/F(y)` and
//! `L(y|x) = (F(y)/F(x))^{M−1}`, the equilibrium bid is
//! `β(x) = ∫₀ˣ υ(y, y) P(y) L(y|x) dy`.

use crate::math;
use crate::numerics::RootFinder;

use super::symmetric::integrate;
use super::{check_bidders, validate_beliefs, AuctionError, ValueDistribution};

const IH: ValueDistribution = ValueDistribution::IrwinHall2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum InterdependentMethod {
    /// Piecewise closed form; the remaining polynomial integral by quadrature.
    Closed,
    /// Direct quadrature of `∫ υ(y,y) P(y) L(y|x) dy`.
    Quadrature,
}

fn check_weights(alpha: f64, xi: f64) -> Result<(), AuctionError> {
    for (name, w) in [("alpha", alpha), ("xi", xi)] {
        if !(0.0..=1.0).contains(&w) {
            return Err(AuctionError::InvalidParameter { name, value: w });
        }
    }
    Ok(())
}

/// `∫₁ˣ (2y − 1 − y²/2)^n dy` for `x ∈ [1, 2]`.
pub fn irwin_hall_power_integral(x: f64, n: u32) -> Result<f64, AuctionError> {
    if !(1.0..=2.0).contains(&x) {
        return Err(AuctionError::OutsideSupport { x, lo: 1.0, hi: 2.0 });
    }
    integrate(&IH, |y| math::powi(IH.cdf(y), n as i32), 1.0, x)
}

/// `υ(y,y) P(y) L(y|x)`, zero where the envelope vanishes.
fn weighted_envelope(y: f64, x: f64, m: u32, weight: f64) -> f64 {
    let l = IH.envelope(y, x, m);
    if l == 0.0 {
        return 0.0;
    }
    weight * y * IH.reverse_hazard(y, m) * l
}

/// Equilibrium bid with interdependent Irwin–Hall signals.
pub fn bid_interdependent_irwin_hall(
    x: f64,
    m: u32,
    alpha: f64,
    xi: f64,
    method: InterdependentMethod,
) -> Result<f64, AuctionError> {
    check_bidders(m, 2)?;
    check_weights(alpha, xi)?;
    IH.check_in_support(x)?;
    let w = alpha + xi;
    if w == 0.0 || x == 0.0 {
        return Ok(0.0);
    }
    match method {
        InterdependentMethod::Quadrature => integrate(&IH, |y| weighted_envelope(y, x, m, w), 0.0, x),
        InterdependentMethod::Closed => {
            let k = (m - 1) as f64;
            let lead = 2.0 * w * k / (2.0 * k + 1.0);
            if x < 1.0 {
                return Ok(lead * x);
            }
            let fx = math::powi(IH.cdf(x), m as i32 - 1);
            let half_pow = math::powi(0.5, m as i32 - 1);
            let tail = irwin_hall_power_integral(x, m - 1)?;
            Ok(lead * half_pow / fx + w * (x - (half_pow + tail) / fx))
        }
    }
}

/// Expected value of winning at the margin, `E[V | X = x, Y₁ < x]
/// = αx + ξ E[Y₁ | Y₁ < x]`.
pub fn screening_condition(x: f64, m: u32, alpha: f64, xi: f64) -> Result<f64, AuctionError> {
    check_bidders(m, 1)?;
    check_weights(alpha, xi)?;
    IH.check_in_support(x)?;
    if m == 1 || x == 0.0 {
        return Ok(alpha * x);
    }
    let below = integrate(&IH, |y| IH.conditional_cdf(y, x, m), 0.0, x)?;
    Ok(alpha * x + xi * (x - below))
}

/// Lowest signal `x*` at which bidding the reserve `r` is profitable:
/// the root of `E[V | X = x, Y₁ < x] = r` on `[0, 2]`.
pub fn screening_level(r: f64, m: u32, alpha: f64, xi: f64) -> Result<f64, AuctionError> {
    check_bidders(m, 1)?;
    check_weights(alpha, xi)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(AuctionError::InvalidParameter { name: "reserve", value: r });
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let max = screening_condition(2.0, m, alpha, xi)?;
    if r > max {
        return Err(AuctionError::NoParticipation { r, max });
    }
    if r == max {
        return Ok(2.0);
    }
    let mut err = None;
    let res = RootFinder::new(0.0, 1e-12).solve(
        |x| match screening_condition(x, m, alpha, xi) {
            Ok(v) => v - r,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        },
        0.0,
        2.0,
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(res?.root)
}

/// Bid with interdependent Irwin–Hall signals, reserve `r` and `M` bidders:
/// `β(x) = r L(x*|x) + ∫_{x*}^x υ(y,y) P(y) L(y|x) dy` for `x ≥ x*(r)`.
pub fn bid_combined_realistic(x: f64, r: f64, m: u32, alpha: f64, xi: f64) -> Result<f64, AuctionError> {
    IH.check_in_support(x)?;
    let x_star = screening_level(r, m, alpha, xi)?;
    if x < x_star {
        return Err(AuctionError::BelowScreening { x, x_star });
    }
    if m == 1 || x == x_star {
        return Ok(r);
    }
    let w = alpha + xi;
    let carried = r * IH.envelope(x_star, x, m);
    let accrued = integrate(&IH, |y| weighted_envelope(y, x, m, w), x_star, x)?;
    Ok(carried + accrued)
}

/// [`bid_combined_realistic`] with beliefs `p_l` over the number of rivals.
///
/// Each count `l` uses its own screening level for `l + 1` bidders; counts
/// whose screening level exceeds `x` are dropped and the remaining weights
/// `p_l F(x)^l` renormalized.
pub fn bid_combined_variable(x: f64, r: f64, beliefs: &[f64], alpha: f64, xi: f64) -> Result<f64, AuctionError> {
    if beliefs.is_empty() {
        return Err(AuctionError::InvalidBeliefs("no bidder counts"));
    }
    validate_beliefs(beliefs, beliefs.len() as u32)?;
    check_weights(alpha, xi)?;
    IH.check_in_support(x)?;
    let mut feasible = alloc::vec![false; beliefs.len()];
    let mut lowest: Option<f64> = None;
    for (l, &p) in beliefs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        match screening_level(r, l as u32 + 1, alpha, xi) {
            Ok(x_star) => {
                feasible[l] = x >= x_star;
                lowest = Some(lowest.map_or(x_star, |v: f64| v.min(x_star)));
            }
            Err(AuctionError::NoParticipation { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if !feasible.iter().any(|&f| f) {
        return match lowest {
            Some(x_star) => Err(AuctionError::BelowScreening { x, x_star }),
            None => {
                let max = screening_condition(2.0, beliefs.len() as u32, alpha, xi)?;
                Err(AuctionError::NoParticipation { r, max })
            }
        };
    }
    let f = IH.cdf(x);
    let total: f64 = beliefs
        .iter()
        .zip(&feasible)
        .filter(|(_, &ok)| ok)
        .map(|(p, _)| p)
        .sum();
    let renormalized: alloc::vec::Vec<f64> = beliefs
        .iter()
        .zip(&feasible)
        .map(|(p, &ok)| if ok { p / total } else { 0.0 })
        .collect();
    super::bid_variable_bidders(
        x,
        &renormalized,
        |l, x| bid_combined_realistic(x, r, l as u32 + 1, alpha, xi),
        |l, _| math::powi(f, l as i32),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use InterdependentMethod::{Closed, Quadrature};

    /// `∫₁ˣ F^n` by expanding `(1 − u²/2)^n` with `u = 2 − y`.
    fn binomial_integral(x: f64, n: u32) -> f64 {
        let u0 = 2.0 - x;
        let mut c = 1.0;
        let mut s = 0.0;
        for k in 0..=n {
            if k > 0 {
                c = c * (n - k + 1) as f64 / k as f64;
            }
            let e = 2 * k as i32 + 1;
            s += c * (-0.5f64).powi(k as i32) * (1.0 - u0.powi(e)) / e as f64;
        }
        s
    }

    #[test]
    fn power_integral_matches_binomial_expansion() {
        for n in 1..=5 {
            for k in 0..=10 {
                let x = 1.0 + k as f64 / 10.0;
                let q = irwin_hall_power_integral(x, n).unwrap();
                assert!((q - binomial_integral(x, n)).abs() < 1e-13, "n={n} x={x}");
            }
        }
        assert!(irwin_hall_power_integral(0.5, 2).is_err());
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for m in [2u32, 3, 5] {
            for (a, b) in [(0.5, 0.5), (0.3, 0.7), (1.0, 0.0), (0.2, 0.1)] {
                for k in 0..=40 {
                    let x = k as f64 / 20.0;
                    let c = bid_interdependent_irwin_hall(x, m, a, b, Closed).unwrap();
                    let q = bid_interdependent_irwin_hall(x, m, a, b, Quadrature).unwrap();
                    assert!((c - q).abs() < 1e-10, "m={m} x={x}: {c} vs {q}");
                    assert!(q <= (a + b) * x + 1e-15);
                }
            }
        }
    }

    #[test]
    fn interdependent_examples() {
        let b = bid_interdependent_irwin_hall(1.0, 2, 0.5, 0.5, Closed).unwrap();
        assert!((b - 2.0 / 3.0).abs() < 1e-14);
        for m in [2u32, 3, 5] {
            let b = bid_interdependent_irwin_hall(1.0, m, 0.3, 0.7, Quadrature).unwrap();
            let expect = 2.0 * (m - 1) as f64 / (2 * m - 1) as f64;
            assert!((b - expect).abs() < 1e-12);
        }
        assert_eq!(bid_interdependent_irwin_hall(1.3, 4, 0.0, 0.0, Closed).unwrap(), 0.0);
        assert!(bid_interdependent_irwin_hall(2.1, 4, 0.5, 0.5, Closed).is_err());
    }

    /// `E[Y₁ | Y₁ < x]` from the binomial expansion.
    fn conditional_mean(x: f64, m: u32) -> f64 {
        let k = (m - 1) as f64;
        if x <= 1.0 {
            return x * 2.0 * k / (2.0 * k + 1.0);
        }
        let fx = IH.cdf(x).powi(m as i32 - 1);
        let head = 0.5f64.powi(m as i32 - 1) / (2.0 * k + 1.0);
        x - (head + binomial_integral(x, m - 1)) / fx
    }

    #[test]
    fn screening() {
        assert_eq!(screening_level(0.0, 3, 0.5, 0.5).unwrap(), 0.0);
        let top = screening_condition(2.0, 3, 0.5, 0.5).unwrap();
        assert_eq!(screening_level(top, 3, 0.5, 0.5).unwrap(), 2.0);
        assert!(matches!(screening_level(top + 0.01, 3, 0.5, 0.5), Err(AuctionError::NoParticipation { .. })));
        let xs = screening_level(0.8, 3, 0.5, 0.5).unwrap();
        let residual = 0.5 * xs + 0.5 * conditional_mean(xs, 3) - 0.8;
        assert!(residual.abs() < 1e-9, "residual {residual}");
        // Sole bidder: participate once the own value covers the reserve.
        assert!((screening_level(0.4, 1, 0.5, 0.5).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn combined_boundaries() {
        let xs = screening_level(0.8, 3, 0.5, 0.5).unwrap();
        assert_eq!(bid_combined_realistic(xs, 0.8, 3, 0.5, 0.5).unwrap(), 0.8);
        assert!(matches!(
            bid_combined_realistic(xs - 0.01, 0.8, 3, 0.5, 0.5),
            Err(AuctionError::BelowScreening { .. })
        ));
        for k in 0..=20 {
            let x = k as f64 / 10.0;
            let a = bid_combined_realistic(x, 0.0, 4, 0.3, 0.6).unwrap();
            let b = bid_interdependent_irwin_hall(x, 4, 0.3, 0.6, Closed).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        let mut prev = 0.8;
        for k in 0..=50 {
            let x = xs + (2.0 - xs) * k as f64 / 50.0;
            let b = bid_combined_realistic(x, 0.8, 3, 0.5, 0.5).unwrap();
            assert!(b >= prev - 1e-15 && b <= x);
            prev = b;
        }
    }

    #[test]
    fn combined_variable() {
        let p = [0.0, 0.5, 0.5];
        let x = 1.6;
        let b = bid_combined_variable(x, 0.8, &p, 0.5, 0.5).unwrap();
        let b2 = bid_combined_realistic(x, 0.8, 2, 0.5, 0.5).unwrap();
        let b3 = bid_combined_realistic(x, 0.8, 3, 0.5, 0.5).unwrap();
        let (w2, w3) = (0.5 * IH.cdf(x), 0.5 * IH.cdf(x).powi(2));
        assert!((b - (w2 * b2 + w3 * b3) / (w2 + w3)).abs() < 1e-14);
        // Only the count with the lower screening level is feasible here.
        let x2 = screening_level(0.8, 2, 0.5, 0.5).unwrap();
        let x3 = screening_level(0.8, 3, 0.5, 0.5).unwrap();
        let (lo, hi) = (x2.min(x3), x2.max(x3));
        let mid = 0.5 * (lo + hi);
        let only = if x2 < x3 { 2 } else { 3 };
        let b = bid_combined_variable(mid, 0.8, &p, 0.5, 0.5).unwrap();
        assert!((b - bid_combined_realistic(mid, 0.8, only, 0.5, 0.5).unwrap()).abs() < 1e-15);
        assert!(matches!(
            bid_combined_variable(0.9 * lo, 0.8, &p, 0.5, 0.5),
            Err(AuctionError::BelowScreening { .. })
        ));
        assert!(matches!(
            bid_combined_variable(1.0, 5.0, &p, 0.5, 0.5),
            Err(AuctionError::NoParticipation { .. })
        ));
    }
}
