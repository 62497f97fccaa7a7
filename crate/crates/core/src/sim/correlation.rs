//! Correlated innovations for the five log-normal series.

use super::SimError;
use crate::math;

/// Lower-triangular Cholesky factor of a 5×5 correlation matrix.
pub fn cholesky5(c: &[[f64; 5]; 5]) -> Result<[[f64; 5]; 5], SimError> {
    for i in 0..5 {
        if c[i][i] != 1.0 {
            return Err(SimError::InvalidCorrelation("diagonal entries must be 1"));
        }
        for j in 0..5 {
            if !c[i][j].is_finite() || c[i][j] != c[j][i] || math::abs(c[i][j]) > 1.0 {
                return Err(SimError::InvalidCorrelation(
                    "entries must be finite, symmetric and in [-1, 1]",
                ));
            }
        }
    }
    let mut l = [[0.0; 5]; 5];
    for i in 0..5 {
        for j in 0..=i {
            let mut s = c[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                // Semi-definite matrices (perfect correlation) give s = 0 up to rounding.
                if s < -1e-12 {
                    return Err(SimError::InvalidCorrelation("matrix is not positive semi-definite"));
                }
                l[i][i] = math::sqrt(s.max(0.0));
            } else {
                l[i][j] = if l[j][j] > 0.0 { s / l[j][j] } else { 0.0 };
            }
        }
    }
    Ok(l)
}

/// `out = L·z`.
pub fn correlate(l: &[[f64; 5]; 5], z: &[f64; 5]) -> [f64; 5] {
    let mut out = [0.0; 5];
    for i in 0..5 {
        let mut s = 0.0;
        for k in 0..=i {
            s += l[i][k] * z[k];
        }
        out[i] = s;
    }
    out
}
