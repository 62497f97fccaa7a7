//! Variance-weighted combination of valuation estimates.

use alloc::vec::Vec;

use super::ValuationError;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CombinedValuation {
    pub value: f64,
    /// Weight applied to each input: `(Σ_{j≠i} σ_j²) / (k Σ_j σ_j²)`.
    pub weights: Vec<f64>,
    pub k: usize,
}

/// `(1/k) Σ_i (Σ_{j≠i} σ_j²) υ_i / Σ_j σ_j²` over `(υ_i, σ_i²)` pairs.
///
/// Each estimate is weighted by the variance of all the others, so noisier
/// series count for less.
pub fn combine_variance_weighted(values: &[(f64, f64)]) -> Result<CombinedValuation, ValuationError> {
    let k = values.len();
    if k < 2 {
        return Err(ValuationError::TooFewSeries(k));
    }
    for (i, &(v, s2)) in values.iter().enumerate() {
        if !(s2 > 0.0 && s2.is_finite()) {
            return Err(ValuationError::InvalidVariance { index: i, variance: s2 });
        }
        if !v.is_finite() {
            return Err(ValuationError::NonFiniteValue { index: i });
        }
    }
    let total: f64 = values.iter().map(|p| p.1).sum();
    let mut num = 0.0;
    let mut weights = Vec::with_capacity(k);
    for i in 0..k {
        // Sum the others directly rather than `total - σ_i²` to avoid cancellation.
        let others: f64 = values
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.1)
            .sum();
        num += others * values[i].0;
        weights.push(others / total / k as f64);
    }
    Ok(CombinedValuation {
        value: num / total / k as f64,
        weights,
        k,
    })
}
