//! Expectations of the valuations over independently simulated histories.

use super::ladder::valuation_set;
use super::{ValuationError, ValuationMode, ValuationParams};
use crate::math;
use crate::sim::{build_portfolio_dataset, SeedRanges};

/// Monte Carlo mean of each valuation, in [`ValuationMode::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExpectedValuations {
    pub n_paths: usize,
    pub mean: [f64; 7],
    /// Standard error of each mean; zero for a single path.
    pub std_error: [f64; 7],
    /// Every path satisfied the full dominance chain.
    pub pecking_order_ok: bool,
}

impl ExpectedValuations {
    pub fn mean(&self, mode: ValuationMode) -> f64 {
        self.mean[mode.index()]
    }
}

/// Averages [`valuation_set`] over `n_paths` datasets simulated with seeds
/// `ranges.seed, ranges.seed + 1, …`.
pub fn expected_valuation_set(
    ranges: &SeedRanges,
    params: &ValuationParams,
    n_paths: usize,
) -> Result<ExpectedValuations, ValuationError> {
    if n_paths == 0 {
        return Err(ValuationError::NoPaths);
    }
    let mut samples: [alloc::vec::Vec<f64>; 7] = Default::default();
    let mut ok = true;
    for k in 0..n_paths {
        let r = SeedRanges {
            seed: ranges.seed.wrapping_add(k as u64),
            ..ranges.clone()
        };
        let ts = build_portfolio_dataset(&r)?;
        let set = valuation_set(&ts, params)?;
        ok &= set.pecking.all();
        for m in ValuationMode::ALL {
            samples[m.index()].push(set.value(m));
        }
    }
    let mut mean = [0.0; 7];
    let mut std_error = [0.0; 7];
    for j in 0..7 {
        let (m, v) = math::mean_variance(&samples[j]);
        mean[j] = m;
        std_error[j] = math::sqrt(v / n_paths as f64);
    }
    Ok(ExpectedValuations {
        n_paths,
        mean,
        std_error,
        pecking_order_ok: ok,
    })
}
