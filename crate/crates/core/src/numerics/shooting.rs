//! Shooting on a free right endpoint.
//!
//! The problems solved here have a known state at an unknown right endpoint
//! `s` (`y(s) = right`) and a known state at `t = 0` (`y(0) = left`), with a
//! right-hand side that is singular as `t → 0`. Each trial `s` is integrated
//! from `s` down towards zero, where the boundary values are known exactly,
//! and classified:
//!
//! - the right-hand side reports a singular state before reaching the floor
//!   `floor_fraction · s`: `s` is too large;
//! - the floor is reached: the state is extrapolated linearly to `t = 0` and
//!   the summed signed deviation from `left` decides (negative: too large).
//!
//! Bisection on `s` converges to the sign change; the left mismatch reported
//! is the extrapolated deviation at the accepted endpoint.

use alloc::vec::Vec;

use super::ode::{integrate_ode, OdeOptions, OdeOutcome, Trajectory};
use super::NumericsError;
use crate::math;

#[derive(Debug, Clone, Copy)]
pub struct ShootingOptions {
    /// Integration stops at `floor_fraction · s` rather than at the singular 0.
    pub floor_fraction: f64,
    /// Relative width at which bisection on the endpoint stops.
    pub endpoint_rel_tol: f64,
    pub max_bisections: usize,
    pub ode: OdeOptions,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            floor_fraction: 1e-5,
            endpoint_rel_tol: 4.0 * f64::EPSILON,
            max_bisections: 200,
            ode: OdeOptions {
                rtol: 1e-12,
                atol: 1e-14,
                ..OdeOptions::default()
            },
        }
    }
}

/// Converged shooting solution.
#[derive(Debug, Clone)]
pub struct BvpSolution {
    /// Right endpoint `s`.
    pub endpoint: f64,
    /// Solution nodes on `[floor, endpoint]`, ascending in `t`.
    pub trajectory: Trajectory,
    /// Linearly extrapolated `y(0)`.
    pub extrapolated_left: Vec<f64>,
    /// `max_i |y_i(0) - left_i|`.
    pub left_mismatch: f64,
    /// `max_i |y_i(endpoint) - right_i|`; zero by construction.
    pub right_mismatch: f64,
    pub bisections: usize,
}

enum Trial {
    Collided,
    Reached(Trajectory),
}

fn extrapolate_left(tr: &Trajectory) -> Vec<f64> {
    // Trajectories are stored in integration order, so the floor is last.
    let k = tr.len() - 1;
    let t = tr.times()[k];
    let y = tr.state(k);
    let dy = tr.derivative(k);
    y.iter().zip(dy).map(|(y, dy)| y - t * dy).collect()
}

/// The trajectory if the trial endpoint lies at or below the solution.
fn low_side(t: Trial, left: &[f64]) -> Option<Trajectory> {
    match t {
        Trial::Collided => None,
        Trial::Reached(tr) => {
            let e = extrapolate_left(&tr);
            let dev: f64 = e.iter().zip(left).map(|(a, b)| a - b).sum();
            (dev >= 0.0).then_some(tr)
        }
    }
}

fn trial<F>(rhs: &mut F, right: &[f64], s: f64, opts: &ShootingOptions) -> Result<Trial, NumericsError>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> bool,
{
    let floor = s * opts.floor_fraction;
    let ode = OdeOptions {
        initial_step: s * 1e-3,
        min_step: (s * 1e-14).max(f64::MIN_POSITIVE),
        ..opts.ode
    };
    match integrate_ode(&mut *rhs, s, right, floor, &ode) {
        Ok(OdeOutcome::Completed(tr)) => Ok(Trial::Reached(tr)),
        Ok(OdeOutcome::Singular { .. }) => Ok(Trial::Collided),
        // A step-size collapse is the same blow-up seen from the controller.
        Err(NumericsError::StepUnderflow { .. }) => Ok(Trial::Collided),
        Err(e) => Err(e),
    }
}

/// Solves the free-endpoint problem described in the module docs.
///
/// `bracket = (lo, hi)` must satisfy: integrating from `lo` reaches the floor
/// and integrating from `hi` meets a singular state. The result is accepted
/// when the extrapolated left mismatch is at most `tol`.
pub fn shoot_bvp<F>(
    mut rhs: F,
    left: &[f64],
    right: &[f64],
    bracket: (f64, f64),
    tol: f64,
    opts: &ShootingOptions,
) -> Result<BvpSolution, NumericsError>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> bool,
{
    let (mut lo, mut hi) = bracket;
    let lower = low_side(trial(&mut rhs, right, lo, opts)?, left);
    let upper = low_side(trial(&mut rhs, right, hi, opts)?, left);
    let mut best = match (lower, upper) {
        (Some(tr), None) => tr,
        (lower, upper) => {
            return Err(NumericsError::ShootingBracket {
                lower_too_high: lower.is_none(),
                upper_too_high: upper.is_none(),
            })
        }
    };
    let mut best_s = lo;

    let mut bisections = 0;
    while bisections < opts.max_bisections && (hi - lo) > opts.endpoint_rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        bisections += 1;
        match low_side(trial(&mut rhs, right, mid, opts)?, left) {
            Some(tr) => {
                lo = mid;
                best = tr;
                best_s = mid;
            }
            None => hi = mid,
        }
    }

    let extrapolated_left = extrapolate_left(&best);
    let trajectory = best.into_ascending();
    let left_mismatch = extrapolated_left
        .iter()
        .zip(left)
        .map(|(a, b)| math::abs(a - b))
        .fold(0.0, f64::max);
    let y_end = trajectory.state(trajectory.len() - 1);
    let right_mismatch = y_end
        .iter()
        .zip(right)
        .map(|(a, b)| math::abs(a - b))
        .fold(0.0, f64::max);

    if !(left_mismatch <= tol) {
        return Err(NumericsError::ShootingNotConverged {
            endpoint: best_s,
            mismatch: left_mismatch,
        });
    }
    Ok(BvpSolution {
        endpoint: best_s,
        trajectory,
        extrapolated_left,
        left_mismatch,
        right_mismatch,
        bisections,
    })
}
