//! Bracketed root finding: secant (Illinois) steps guarded by bisection.

use super::NumericsError;
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// `f(root)`.
    pub residual: f64,
    pub iterations: usize,
    /// Final bracket; always contains `root`.
    pub bracket: (f64, f64),
}

/// Bracketing root finder. Stops when `|f(x)| <= f_tol` or the bracket is
/// narrower than `x_tol`.
#[derive(Debug, Clone, Copy)]
pub struct RootFinder {
    pub x_tol: f64,
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        Self {
            x_tol: 1e-12,
            f_tol: 1e-12,
            max_iter: 500,
        }
    }
}

impl RootFinder {
    pub fn new(x_tol: f64, f_tol: f64) -> Self {
        Self {
            x_tol,
            f_tol,
            ..Self::default()
        }
    }

    pub fn solve<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        lo: f64,
        hi: f64,
    ) -> Result<RootResult, NumericsError> {
        let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mut fa = f(a);
        let mut fb = f(b);
        if !fa.is_finite() {
            return Err(NumericsError::NonFiniteFunction { x: a });
        }
        if !fb.is_finite() {
            return Err(NumericsError::NonFiniteFunction { x: b });
        }
        if math::abs(fa) <= self.f_tol {
            return Ok(RootResult {
                root: a,
                residual: fa,
                iterations: 0,
                bracket: (a, b),
            });
        }
        if math::abs(fb) <= self.f_tol {
            return Ok(RootResult {
                root: b,
                residual: fb,
                iterations: 0,
                bracket: (a, b),
            });
        }
        if fa.signum() == fb.signum() {
            return Err(NumericsError::NoBracket {
                lo: a,
                hi: b,
                f_lo: fa,
                f_hi: fb,
            });
        }

        // Illinois: halve the retained endpoint's value when the same side
        // is kept twice in a row.
        let mut side = 0i8;
        let mut width = b - a;
        for it in 1..=self.max_iter {
            let secant = b - fb * (b - a) / (fb - fa);
            let mid = 0.5 * (a + b);
            let mut x = if secant > a && secant < b { secant } else { mid };
            // Force a bisection when the last step shrank the bracket too little.
            if it % 3 == 0 && (b - a) > 0.5 * width {
                x = mid;
            }
            if it % 3 == 0 {
                width = b - a;
            }
            let fx = f(x);
            if !fx.is_finite() {
                return Err(NumericsError::NonFiniteFunction { x });
            }
            if fx.signum() == fb.signum() {
                b = x;
                fb = fx;
                if side == 1 {
                    fa *= 0.5;
                }
                side = 1;
            } else {
                a = x;
                fa = fx;
                if side == -1 {
                    fb *= 0.5;
                }
                side = -1;
            }
            if math::abs(fx) <= self.f_tol || (b - a) <= self.x_tol || fx == 0.0 {
                return Ok(RootResult {
                    root: x,
                    residual: fx,
                    iterations: it,
                    bracket: (a, b),
                });
            }
            let next_mid = 0.5 * (a + b);
            if next_mid <= a || next_mid >= b {
                return Ok(RootResult {
                    root: x,
                    residual: fx,
                    iterations: it,
                    bracket: (a, b),
                });
            }
        }
        Err(NumericsError::RootNotConverged {
            lo: a,
            hi: b,
            iterations: self.max_iter,
        })
    }
}

/// Root of `f` in `[lo, hi]` with `f(lo)·f(hi) <= 0`, to `tol` in both
/// argument and residual.
pub fn find_root<F: FnMut(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<RootResult, NumericsError> {
    RootFinder::new(tol, tol).solve(f, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let r = find_root(|x| x - 0.5, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.root - 0.5).abs() < 1e-12);
        // optimal reserve for uniform with zero seller value: 2r - 1 = 0
        let r = find_root(|x| 2.0 * x - 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.root - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cosine_fixed_point() {
        // Oracle: fixed-point iteration x <- cos x.
        let mut x: f64 = 0.5;
        for _ in 0..200 {
            x = crate::math::cos(x);
        }
        let r = find_root(|t| crate::math::cos(t) - t, 0.0, 1.0, 1e-13).unwrap();
        assert!((r.root - x).abs() < 1e-12);
        assert!((r.root - 0.739_085_133_215_160_6).abs() < 1e-12);
        assert!(r.residual.abs() <= 1e-13 || r.bracket.1 - r.bracket.0 <= 1e-13);
    }

    #[test]
    fn no_bracket_is_an_error() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-10),
            Err(NumericsError::NoBracket { .. })
        ));
    }

    #[test]
    fn endpoint_root_and_reversed_bracket() {
        let r = find_root(|x| x, 0.0, 1.0, 1e-12).unwrap();
        assert_eq!(r.root, 0.0);
        let r = find_root(|x| x - 0.25, 1.0, 0.0, 1e-12).unwrap();
        assert!((r.root - 0.25).abs() < 1e-12);
    }

    #[test]
    fn steep_and_flat_functions_stay_in_bracket() {
        let f = |x: f64| crate::math::powi(x - 0.3, 9);
        let r = RootFinder::new(1e-13, 0.0).solve(f, 0.0, 1.0).unwrap();
        assert!(r.root >= 0.0 && r.root <= 1.0);
        assert!(r.bracket.0 <= r.root && r.root <= r.bracket.1);
        assert!((r.root - 0.3).abs() < 1e-12);
        let g = |x: f64| if x < 0.7 { -1.0 } else { 1.0 };
        let r = find_root(g, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.root - 0.7).abs() < 1e-11);
    }
}
