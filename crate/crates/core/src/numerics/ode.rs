//! Explicit adaptive Runge–Kutta (Dormand–Prince 5(4)) with a dense
//! trajectory, integrating in either direction.

use alloc::vec;
use alloc::vec::Vec;

use super::NumericsError;
use crate::math;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Initial step magnitude; 0 picks `|t1 - t0| / 100`.
    pub initial_step: f64,
    /// Steps below this magnitude abort the integration.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-11,
            atol: 1e-13,
            initial_step: 0.0,
            min_step: 1e-15,
            max_steps: 200_000,
        }
    }
}

/// Accepted steps of an integration, with derivatives for cubic Hermite
/// interpolation between nodes. Nodes are stored in integration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dim: usize,
    t: Vec<f64>,
    y: Vec<f64>,
    dy: Vec<f64>,
}

impl Trajectory {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            t: Vec::new(),
            y: Vec::new(),
            dy: Vec::new(),
        }
    }

    fn push(&mut self, t: f64, y: &[f64], dy: &[f64]) {
        self.t.push(t);
        self.y.extend_from_slice(y);
        self.dy.extend_from_slice(dy);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn state(&self, k: usize) -> &[f64] {
        &self.y[k * self.dim..(k + 1) * self.dim]
    }

    pub fn derivative(&self, k: usize) -> &[f64] {
        &self.dy[k * self.dim..(k + 1) * self.dim]
    }

    pub fn first_time(&self) -> f64 {
        self.t[0]
    }

    pub fn last_time(&self) -> f64 {
        self.t[self.t.len() - 1]
    }

    /// Reorders nodes so that time increases.
    pub fn into_ascending(mut self) -> Self {
        if self.t.len() > 1 && self.t[0] > self.t[self.t.len() - 1] {
            let d = self.dim;
            let n = self.t.len();
            self.t.reverse();
            let mut y = Vec::with_capacity(self.y.len());
            let mut dy = Vec::with_capacity(self.dy.len());
            for k in (0..n).rev() {
                y.extend_from_slice(&self.y[k * d..(k + 1) * d]);
                dy.extend_from_slice(&self.dy[k * d..(k + 1) * d]);
            }
            self.y = y;
            self.dy = dy;
        }
        self
    }

    /// Cubic Hermite interpolation of the state at `t` (clamped to the
    /// covered range).
    pub fn eval(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.eval_into(t, &mut out);
        out
    }

    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        let n = self.t.len();
        let d = self.dim;
        if n == 1 {
            out.copy_from_slice(self.state(0));
            return;
        }
        let ascending = self.t[0] <= self.t[n - 1];
        // Locate k with t in [t_k, t_{k+1}] (in integration order).
        let k = {
            let (mut lo, mut hi) = (0usize, n - 1);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                let before = if ascending {
                    self.t[mid] <= t
                } else {
                    self.t[mid] >= t
                };
                if before {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        let (t0, t1) = (self.t[k], self.t[k + 1]);
        let h = t1 - t0;
        let s = ((t - t0) / h).clamp(0.0, 1.0);
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        for i in 0..d {
            let y0 = self.y[k * d + i];
            let y1 = self.y[(k + 1) * d + i];
            let m0 = self.dy[k * d + i];
            let m1 = self.dy[(k + 1) * d + i];
            out[i] = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
        }
    }
}

/// How an integration ended.
#[derive(Debug, Clone, PartialEq)]
pub enum OdeOutcome {
    /// Reached the requested end time.
    Completed(Trajectory),
    /// The right-hand side reported a singular state; the trajectory ends at
    /// the last accepted point before it.
    Singular { at: f64, trajectory: Trajectory },
}

impl OdeOutcome {
    pub fn trajectory(&self) -> &Trajectory {
        match self {
            OdeOutcome::Completed(t) => t,
            OdeOutcome::Singular { trajectory, .. } => trajectory,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, OdeOutcome::Completed(_))
    }
}

/// Integrates `y' = rhs(t, y)` from `t0` to `t1`.
///
/// `rhs` writes the derivative into its third argument and returns `false`
/// when the state is outside the domain of the system. Steps that touch such
/// a state are retried with a smaller step; once the step falls below
/// `min_step` the integration ends with [`OdeOutcome::Singular`].
pub fn integrate_ode<F>(
    mut rhs: F,
    t0: f64,
    y0: &[f64],
    t1: f64,
    opts: &OdeOptions,
) -> Result<OdeOutcome, NumericsError>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> bool,
{
    let d = y0.len();
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = math::abs(t1 - t0);
    let mut traj = Trajectory::new(d);
    let mut y = y0.to_vec();
    let mut k1 = vec![0.0; d];
    if !rhs(t0, &y, &mut k1) {
        return Ok(OdeOutcome::Singular {
            at: t0,
            trajectory: traj,
        });
    }
    traj.push(t0, &y, &k1);
    if span == 0.0 {
        return Ok(OdeOutcome::Completed(traj));
    }

    let mut k2 = vec![0.0; d];
    let mut k3 = vec![0.0; d];
    let mut k4 = vec![0.0; d];
    let mut k5 = vec![0.0; d];
    let mut k6 = vec![0.0; d];
    let mut k7 = vec![0.0; d];
    let mut tmp = vec![0.0; d];
    let mut y_new = vec![0.0; d];

    let mut t = t0;
    let mut h = if opts.initial_step > 0.0 {
        opts.initial_step.min(span)
    } else {
        span / 100.0
    };
    let mut steps = 0usize;

    while dir * (t1 - t) > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(NumericsError::StepUnderflow { t });
        }
        let remaining = math::abs(t1 - t);
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        let hs = dir * h;

        macro_rules! stage {
            ($out:ident, $c:expr, [$(($a:expr, $k:ident)),*]) => {{
                for i in 0..d {
                    tmp[i] = y[i] $(+ hs * $a * $k[i])*;
                }
                rhs(t + $c * hs, &tmp, &mut $out)
            }};
        }

        let ok = stage!(k2, C2, [(A21, k1)])
            && stage!(k3, C3, [(A31, k1), (A32, k2)])
            && stage!(k4, C4, [(A41, k1), (A42, k2), (A43, k3)])
            && stage!(k5, C5, [(A51, k1), (A52, k2), (A53, k3), (A54, k4)])
            && stage!(
                k6,
                1.0,
                [(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)]
            );
        let ok = ok && {
            for i in 0..d {
                y_new[i] =
                    y[i] + hs * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
            }
            let t_new = if last { t1 } else { t + hs };
            rhs(t_new, &y_new, &mut k7)
        };

        if !ok {
            h *= 0.25;
            if h < opts.min_step {
                return Ok(OdeOutcome::Singular {
                    at: t,
                    trajectory: traj,
                });
            }
            continue;
        }

        let mut err = 0.0f64;
        for i in 0..d {
            let e = hs
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.atol + opts.rtol * math::abs(y[i]).max(math::abs(y_new[i]));
            let r = e / sc;
            err += r * r;
        }
        let err = math::sqrt(err / d as f64);

        if err <= 1.0 {
            t = if last { t1 } else { t + hs };
            y.copy_from_slice(&y_new);
            k1.copy_from_slice(&k7);
            traj.push(t, &y, &k1);
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * math::pow(err, -0.2)).clamp(0.2, 5.0)
            };
            h *= factor;
        } else {
            let factor = if err.is_finite() {
                (0.9 * math::pow(err, -0.2)).clamp(0.1, 0.9)
            } else {
                0.1
            };
            h *= factor;
            if h < opts.min_step {
                return Err(NumericsError::StepUnderflow { t });
            }
        }
    }
    Ok(OdeOutcome::Completed(traj))
}
