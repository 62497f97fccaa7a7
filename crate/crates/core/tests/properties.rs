//! Invariants checked over randomly drawn inputs.

use proptest::prelude::*;
use seclend_core::auction::{
    bid_interdependent_irwin_hall, bid_reserve_general, bid_reserve_uniform, bid_symmetric_general, bid_uniform,
    bid_variable_uniform, bidder_count_pmf, InterdependentMethod, ValueDistribution,
};
use seclend_core::numerics::{normal_cdf, RootFinder};
use seclend_core::sim::{build_portfolio_dataset, SeedRanges};
use seclend_core::valuation::{
    combine_variance_weighted, max_take, transaction_cost_of_path, valuation_set, ValuationMode, ValuationParams,
};

fn small_ranges(seed: u64) -> SeedRanges {
    SeedRanges {
        n_securities: 6,
        n_days: 40,
        seed,
        ..SeedRanges::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn take_is_bounded_and_monotone_in_delta(
        b in 0.0..1e6f64, l in 0.0..1e6f64, i in 0.0..1e6f64, h in 0.0..1e6f64,
        d1 in 0.0..=1.0f64, d2 in 0.0..=1.0f64,
    ) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let a = max_take(b, l, i, h, lo);
        prop_assert!((0.0..=h).contains(&a));
        prop_assert!(max_take(b, l, i, h, hi) >= a);
    }

    #[test]
    fn transaction_costs_scale_with_cost(path in prop::collection::vec(-10.0..10.0f64, 1..50), c in 0.0..100.0f64) {
        let unit = transaction_cost_of_path(&path, 1.0);
        prop_assert!(unit >= 0.0);
        prop_assert_eq!(transaction_cost_of_path(&path, 0.0), 0.0);
        prop_assert!((transaction_cost_of_path(&path, c) - c * unit).abs() <= 1e-9 * c.max(1.0) * unit.max(1.0));
    }

    #[test]
    fn pecking_order_holds(seed in any::<u64>()) {
        let ts = build_portfolio_dataset(&small_ranges(seed)).unwrap();
        let set = valuation_set(&ts, &ValuationParams::default()).unwrap();
        prop_assert!(set.pecking.all(), "{:?}", set.pecking);
        prop_assert!(set.value(ValuationMode::Beta) >= set.value(ValuationMode::Alternate));
    }

    #[test]
    fn delta_override_is_monotone(seed in any::<u64>(), d1 in 0.0..=1.0f64, d2 in 0.0..=1.0f64) {
        let ts = build_portfolio_dataset(&small_ranges(seed)).unwrap();
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let v = |d| {
            let p = ValuationParams { delta_override: Some(d), ..ValuationParams::default() };
            valuation_set(&ts, &p).unwrap().value(ValuationMode::Beta)
        };
        prop_assert!(v(hi) >= v(lo));
    }

    #[test]
    fn combination_weights(
        pairs in prop::collection::vec((-1.0..1.0f64, 1e-6..10.0f64), 2..20),
    ) {
        // Weights sum to (k − 1)/k, so the combination shrinks towards zero
        // for small k and approaches a weighted average as k grows.
        let c = combine_variance_weighted(&pairs).unwrap();
        let k = pairs.len() as f64;
        prop_assert!((c.weights.iter().sum::<f64>() - (k - 1.0) / k).abs() < 1e-12);
        prop_assert!(c.weights.iter().all(|w| *w > 0.0));
        let direct: f64 = c.weights.iter().zip(&pairs).map(|(w, p)| w * p.0).sum();
        prop_assert!((c.value - direct).abs() < 1e-12);
        let top = pairs.iter().map(|p| p.0.abs()).fold(0.0, f64::max);
        prop_assert!(c.value.abs() <= top * (k - 1.0) / k + 1e-12);
    }

    #[test]
    fn normal_cdf_is_monotone_and_symmetric(a in -40.0..40.0f64, b in -40.0..40.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(normal_cdf(lo) <= normal_cdf(hi));
        prop_assert!((normal_cdf(a) + normal_cdf(-a) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn root_stays_in_bracket(c in -5.0..5.0f64, lo in -10.0..-5.0f64, hi in 5.0..10.0f64) {
        let r = RootFinder::default().solve(|x| x * x * x - c, lo, hi).unwrap();
        prop_assert!(r.root >= lo && r.root <= hi);
        prop_assert!(r.bracket.0 <= r.root && r.root <= r.bracket.1);
        prop_assert!(r.residual.abs() <= 1e-12 || r.bracket.1 - r.bracket.0 <= 1e-12);
    }

    #[test]
    fn private_bids_are_monotone_and_below_value(
        m in 2u32..12, omega in 0.1..10.0f64, a in 0.0..1.0f64, b in 0.0..1.0f64,
    ) {
        let (x1, x2) = if a <= b { (a * omega, b * omega) } else { (b * omega, a * omega) };
        let d = ValueDistribution::Uniform { omega };
        let b1 = bid_symmetric_general(x1, &d, m).unwrap();
        let b2 = bid_symmetric_general(x2, &d, m).unwrap();
        prop_assert!(b1 <= b2 + 1e-12);
        prop_assert!(b1 <= x1 && b2 <= x2);
        prop_assert!(bid_uniform(x1, m, omega).unwrap() <= bid_uniform(x2, m, omega).unwrap());
    }

    #[test]
    fn reserve_raises_bids(m in 1u32..12, r in 0.0..1.0f64, t in 0.0..1.0f64) {
        let x = r + (1.0 - r) * t;
        let with = bid_reserve_uniform(x, r, m, 1.0).unwrap();
        prop_assert!(with >= r && with <= x);
        if m >= 2 {
            prop_assert!(with >= bid_uniform(x, m, 1.0).unwrap());
            let general = bid_reserve_general(x, r, &ValueDistribution::IrwinHall2, m).unwrap();
            prop_assert!(general >= bid_symmetric_general(x, &ValueDistribution::IrwinHall2, m).unwrap() - 1e-12);
        }
    }

    #[test]
    fn variable_bid_is_a_convex_combination(m in 2u32..30, x in 0.0..=1.0f64) {
        let p = bidder_count_pmf(m).unwrap();
        let b = bid_variable_uniform(x, &p, 1.0).unwrap();
        prop_assert!(b >= 0.0);
        prop_assert!(b <= x * (m - 1) as f64 / m as f64 + 1e-15);
        if x > 0.0 {
            prop_assert!(b >= x / 2.0 - 1e-15);
        }
    }

    #[test]
    fn interdependent_bid_below_value(m in 2u32..8, alpha in 0.0..=1.0f64, xi in 0.0..=1.0f64, x in 0.0..=2.0f64) {
        let b = bid_interdependent_irwin_hall(x, m, alpha, xi, InterdependentMethod::Closed).unwrap();
        prop_assert!(b >= 0.0 && b <= (alpha + xi) * x + 1e-15);
    }
}

#[test]
fn bids_are_monotone_on_a_fine_grid() {
    let dists = [
        ValueDistribution::Uniform { omega: 1.0 },
        ValueDistribution::IrwinHall2,
        ValueDistribution::LogNormal { mu: (0.004f64).ln(), sigma: 0.5 },
    ];
    for d in dists {
        let hi = d.upper();
        for m in [2u32, 5] {
            let mut prev = 0.0;
            for k in 0..=1000 {
                let x = hi * k as f64 / 1000.0;
                let b = bid_symmetric_general(x, &d, m).unwrap();
                assert!(b >= prev && b <= x, "{d:?} m={m} x={x}");
                prev = b;
            }
        }
    }
}
