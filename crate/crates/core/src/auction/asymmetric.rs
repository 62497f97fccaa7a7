//! Two groups of bidders with different value distributions.
//!
//! `K` bidders draw values from `F₁` on `[0, ω₁]` and `M − K` from `F₂` on
//! `[0, ω₂]`. Bidders in group `i` use the inverse bid `φ_i`, and each
//! bidder's first-order condition counts its rivals:
//!
//! `Σ_j n_ij (f_j(φ_j)/F_j(φ_j)) φ_j′(b) = 1/(φ_i(b) − b)`,
//!
//! with `n_11 = K − 1`, `n_12 = M − K`, `n_21 = K`, `n_22 = M − K − 1`. The
//! curves meet the boundary conditions `φ_i(0) = 0` and `φ_i(b̄) = ω_i` at a
//! common maximal bid `b̄`, found by shooting.

use alloc::vec::Vec;

use crate::math;
use crate::numerics::{shoot_bvp, RootFinder, ShootingOptions, Trajectory};

use super::{check_bidders, AuctionError, ValueDistribution};

/// Default origin mismatch accepted by the shooting solver.
pub const ASYMMETRIC_LEFT_TOL: f64 = 1e-8;
/// Points of the first-order-condition residual grid.
const RESIDUAL_GRID: usize = 2001;

/// Solved asymmetric equilibrium.
#[derive(Debug, Clone)]
pub struct AsymmetricEquilibrium {
    pub dists: [ValueDistribution; 2],
    /// Bidders per group.
    pub counts: [u32; 2],
    /// Common maximal bid `b̄`.
    pub max_bid: f64,
    /// Largest `|φ_i(0) − 0|` of the extrapolated curves.
    pub left_mismatch: f64,
    /// Largest `|φ_i(b̄) − ω_i|`.
    pub right_mismatch: f64,
    /// Largest first-order-condition residual on the grid, from finite
    /// differences of the tabulated curves.
    pub foc_residual: f64,
    trajectory: Trajectory,
}

/// `u_i = f_i φ_i′ / F_i` for both groups, from `R_i = 1/(φ_i − b)`.
fn hazard_weighted_slopes(k: f64, m: f64, r1: f64, r2: f64) -> (f64, f64) {
    let det = 1.0 - m;
    let u1 = (r1 * (m - k - 1.0) - (m - k) * r2) / det;
    let u2 = ((k - 1.0) * r2 - k * r1) / det;
    (u1, u2)
}

impl AsymmetricEquilibrium {
    /// Lowest bid covered by the integrated curves; below it the curves are
    /// extended linearly to the origin.
    pub fn min_bid(&self) -> f64 {
        self.trajectory.first_time()
    }

    /// `(φ₁(b), φ₂(b))` for `b ∈ [0, b̄]`.
    pub fn inverse_bids(&self, b: f64) -> [f64; 2] {
        let lo = self.min_bid();
        let b = b.clamp(0.0, self.max_bid);
        let mut out = [0.0; 2];
        if b < lo {
            let at = self.trajectory.state(0);
            for i in 0..2 {
                out[i] = at[i] * b / lo;
            }
        } else {
            self.trajectory.eval_into(b, &mut out);
        }
        out
    }

    /// Equilibrium bid of a group-`group` bidder (0 or 1) with value `x`.
    pub fn bid(&self, group: usize, x: f64) -> Result<f64, AuctionError> {
        let d = self.dists[group];
        d.check_in_support(x)?;
        if x == 0.0 {
            return Ok(0.0);
        }
        if x >= d.upper() {
            return Ok(self.max_bid);
        }
        let res = RootFinder::new(1e-15 * self.max_bid, 0.0).solve(
            |b| self.inverse_bids(b)[group] - x,
            0.0,
            self.max_bid,
        )?;
        Ok(res.root)
    }

    /// Nodes `(b, φ₁(b), φ₂(b))` of the solution, ascending in `b`.
    pub fn nodes(&self) -> Vec<(f64, f64, f64)> {
        (0..self.trajectory.len())
            .map(|k| {
                let y = self.trajectory.state(k);
                (self.trajectory.times()[k], y[0], y[1])
            })
            .collect()
    }

    /// First-order-condition residual of both groups at bid `b`, with the
    /// slopes taken by central differences of the curves.
    pub fn foc_residuals_at(&self, b: f64) -> [f64; 2] {
        let h = 1e-6 * self.max_bid;
        let up = self.inverse_bids(b + h);
        let dn = self.inverse_bids(b - h);
        let phi = self.inverse_bids(b);
        let mut u = [0.0; 2];
        for j in 0..2 {
            let slope = (up[j] - dn[j]) / (2.0 * h);
            let d = self.dists[j];
            u[j] = d.pdf(phi[j]) * slope / d.cdf(phi[j]);
        }
        let [k, rest] = self.counts;
        let n = [[k as f64 - 1.0, rest as f64], [k as f64, rest as f64 - 1.0]];
        let mut out = [0.0; 2];
        for i in 0..2 {
            let lhs = (n[i][0] * u[0] + n[i][1] * u[1]) * (phi[i] - b);
            out[i] = math::abs(lhs - 1.0);
        }
        out
    }

    fn max_foc_residual(&self) -> f64 {
        let h = 1e-6 * self.max_bid;
        let lo = self.min_bid() + h;
        let hi = self.max_bid - h;
        (0..RESIDUAL_GRID)
            .map(|k| {
                let b = lo + (hi - lo) * k as f64 / (RESIDUAL_GRID - 1) as f64;
                let r = self.foc_residuals_at(b);
                r[0].max(r[1])
            })
            .fold(0.0, f64::max)
    }
}

/// Solves the two-group equilibrium with `k` bidders from `f1` and `m − k`
/// from `f2`. Both densities must be positive at the top of their supports.
///
/// A common maximal bid requires both curves to rise into it; when one group
/// is outnumbered by much stronger rivals no such solution exists and the
/// shooting bracket error is returned.
pub fn solve_asymmetric_two_group(
    f1: &ValueDistribution,
    f2: &ValueDistribution,
    m: u32,
    k: u32,
) -> Result<AsymmetricEquilibrium, AuctionError> {
    solve_asymmetric_two_group_with_tol(f1, f2, m, k, ASYMMETRIC_LEFT_TOL)
}

/// [`solve_asymmetric_two_group`] accepting an origin mismatch up to
/// `left_tol`.
///
/// With more than two bidders the extrapolated `φ_i(0)` can be much less
/// sensitive to `b̄` than the curves are near the top (for two uniform groups
/// with `M = 3` it moves like the cube root of the error in `b̄`), so the
/// attainable mismatch is bounded by the resolution of `b̄` in floating point.
pub fn solve_asymmetric_two_group_with_tol(
    f1: &ValueDistribution,
    f2: &ValueDistribution,
    m: u32,
    k: u32,
    left_tol: f64,
) -> Result<AsymmetricEquilibrium, AuctionError> {
    f1.validate()?;
    f2.validate()?;
    check_bidders(m, 2)?;
    if k < 1 || k > m - 1 {
        return Err(AuctionError::InvalidParameter { name: "group_size", value: k as f64 });
    }
    let dists = [*f1, *f2];
    let omega = [f1.upper(), f2.upper()];
    for (d, w) in dists.iter().zip(omega) {
        if !(d.pdf(w) > 0.0) {
            return Err(AuctionError::InvalidParameter { name: "density_at_top", value: d.pdf(w) });
        }
    }
    let (kf, mf) = (k as f64, m as f64);
    let rhs = |b: f64, y: &[f64], dy: &mut [f64]| {
        let mut r = [0.0; 2];
        for i in 0..2 {
            let gap = y[i] - b;
            if !(gap > 0.0 && y[i] > 0.0 && y[i] <= omega[i]) {
                return false;
            }
            r[i] = 1.0 / gap;
        }
        let (u1, u2) = hazard_weighted_slopes(kf, mf, r[0], r[1]);
        for (i, u) in [u1, u2].into_iter().enumerate() {
            let f = dists[i].pdf(y[i]);
            if !(f > 0.0) {
                return false;
            }
            dy[i] = u * dists[i].cdf(y[i]) / f;
        }
        true
    };
    let top = omega[0].min(omega[1]);
    let sol = shoot_bvp(
        rhs,
        &[0.0, 0.0],
        &omega,
        (top * 1e-6, top * (1.0 - 1e-12)),
        left_tol,
        &ShootingOptions::default(),
    )?;
    let mut eq = AsymmetricEquilibrium {
        dists,
        counts: [k, m - k],
        max_bid: sol.endpoint,
        left_mismatch: sol.left_mismatch,
        right_mismatch: sol.right_mismatch,
        foc_residual: 0.0,
        trajectory: sol.trajectory,
    };
    eq.foc_residual = eq.max_foc_residual();
    Ok(eq)
}
