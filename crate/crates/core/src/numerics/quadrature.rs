//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The 15-point Kronrod rule never samples the interval endpoints, so
//! integrable endpoint singularities (e.g. `1/y` times a vanishing factor at
//! zero) are handled without special casing.

use alloc::vec::Vec;

use super::NumericsError;
use crate::math;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated absolute error, always `>= 0`.
    pub abs_error: f64,
    /// Number of interval bisections performed.
    pub subdivisions: usize,
}

/// Adaptive quadrature configuration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_subdivisions: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Error estimate is pinned at the rounding level of the rule.
    at_roundoff: bool,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Segment, NumericsError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(NumericsError::NonFiniteIntegrand { x: center });
    }
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = math::abs(res_k);
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let x1 = center - dx;
        let x2 = center + dx;
        let f1 = f(x1);
        let f2 = f(x2);
        if !f1.is_finite() {
            return Err(NumericsError::NonFiniteIntegrand { x: x1 });
        }
        if !f2.is_finite() {
            return Err(NumericsError::NonFiniteIntegrand { x: x2 });
        }
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (math::abs(f1) + math::abs(f2));
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * math::abs(fc - mean);
    for j in 0..7 {
        res_asc += WGK[j] * (math::abs(fv1[j] - mean) + math::abs(fv2[j] - mean));
    }
    let value = res_k * half;
    res_abs *= math::abs(half);
    res_asc *= math::abs(half);
    let mut error = math::abs((res_k - res_g) * half);
    if res_asc != 0.0 && error != 0.0 {
        let scale = math::pow(200.0 * error / res_asc, 1.5);
        error = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let round_floor = 50.0 * f64::EPSILON * res_abs;
    let mut at_roundoff = false;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && error <= round_floor {
        error = round_floor;
        at_roundoff = true;
    }
    Ok(Segment {
        a,
        b,
        value,
        error,
        at_roundoff,
    })
}

impl Quadrature {
    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }

    pub fn with_rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
    ) -> Result<QuadratureResult, NumericsError> {
        self.integrate_with_breaks(f, a, b, &[])
    }

    /// Integrates `f` over `[a, b]`, starting from a partition that includes
    /// the given interior points (kinks, branch changes). Points outside
    /// `(a, b)` are ignored.
    pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
        &self,
        mut f: F,
        a: f64,
        b: f64,
        breaks: &[f64],
    ) -> Result<QuadratureResult, NumericsError> {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(NumericsError::InvalidInterval { a, b });
        }
        if a == b {
            return Ok(QuadratureResult {
                value: 0.0,
                abs_error: 0.0,
                subdivisions: 0,
            });
        }
        let mut cuts: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
        cuts.push(a);
        let mut interior: Vec<f64> = breaks.iter().copied().filter(|&p| p > a && p < b).collect();
        interior.sort_by(|x, y| x.total_cmp(y));
        interior.dedup();
        cuts.extend(interior);
        cuts.push(b);

        let mut segments: Vec<Segment> = Vec::new();
        for w in cuts.windows(2) {
            segments.push(kronrod(&mut f, w[0], w[1])?);
        }
        let mut subdivisions = 0;
        loop {
            let total: f64 = segments.iter().map(|s| s.value).sum();
            let error: f64 = segments.iter().map(|s| s.error).sum();
            let tol = self.abs_tol.max(self.rel_tol * math::abs(total));
            // Once every piece is at rounding level, subdividing cannot help.
            if error <= tol || segments.iter().all(|s| s.at_roundoff) {
                return Ok(QuadratureResult {
                    value: total,
                    abs_error: error,
                    subdivisions,
                });
            }
            let (worst, _) = segments
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
                .expect("at least one segment");
            let seg = segments[worst];
            let mid = 0.5 * (seg.a + seg.b);
            // Interval can no longer be split in floating point.
            if subdivisions >= self.max_subdivisions || mid <= seg.a || mid >= seg.b {
                return Err(NumericsError::QuadratureNotConverged {
                    value: total,
                    error,
                    tol,
                    subdivisions,
                });
            }
            let left = kronrod(&mut f, seg.a, mid)?;
            let right = kronrod(&mut f, mid, seg.b)?;
            segments[worst] = left;
            segments.push(right);
            subdivisions += 1;
        }
    }
}

/// Adaptive quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn quadrature<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult, NumericsError> {
    Quadrature::default().with_abs_tol(tol).integrate(f, a, b)
}

/// [`quadrature`] with an initial partition at `breaks`.
pub fn quadrature_with_breaks<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<QuadratureResult, NumericsError> {
    Quadrature::default()
        .with_abs_tol(tol)
        .integrate_with_breaks(f, a, b, breaks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_polynomials() {
        let r = quadrature(|y| y, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        let r = quadrature(|y| y * (1.0 - y), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() < 1e-15);
        // antiderivative y^2 - y - y^3/6
        let r = quadrature(|y| 2.0 * y - 1.0 - y * y / 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((r.value - 5.0 / 6.0).abs() < 1e-15);
        assert!(r.abs_error >= 0.0);
    }

    #[test]
    fn exact_for_rule_degree_on_any_interval() {
        // Kronrod-15 integrates degree 22 exactly; check up to 21 on shifted intervals.
        for deg in 0..=21 {
            for &(a, b) in &[(0.0, 1.0), (-1.5, 0.7), (2.0, 5.0)] {
                let exact = (crate::math::powi(b, deg + 1) - crate::math::powi(a, deg + 1))
                    / (deg + 1) as f64;
                let r = Quadrature::default()
                    .with_rel_tol(1e-13)
                    .integrate(|x| crate::math::powi(x, deg), a, b)
                    .unwrap();
                let scale = exact.abs().max(1.0);
                assert!(
                    (r.value - exact).abs() <= 1e-12 * scale,
                    "deg {deg} on [{a},{b}]: {} vs {exact}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn endpoint_singularity() {
        // ∫0^1 1/sqrt(x) dx = 2
        let r = Quadrature::default()
            .with_abs_tol(1e-9)
            .integrate(|x| 1.0 / crate::math::sqrt(x), 0.0, 1.0)
            .unwrap();
        assert!((r.value - 2.0).abs() < 1e-8);
        // ∫0^1 ln x dx = -1
        let r = quadrature(crate::math::ln, 0.0, 1.0, 1e-10).unwrap();
        assert!((r.value + 1.0).abs() < 1e-9);
    }

    #[test]
    fn breaks_help_kinks() {
        let f = |x: f64| if x < 1.0 { x } else { 2.0 - x };
        let r = quadrature_with_breaks(f, 0.0, 2.0, &[1.0, 7.0], 1e-13).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn degenerate_and_invalid() {
        assert_eq!(quadrature(|x| x, 1.0, 1.0, 1e-10).unwrap().value, 0.0);
        assert!(matches!(
            quadrature(|x| x, 1.0, 0.0, 1e-10),
            Err(NumericsError::InvalidInterval { .. })
        ));
        assert!(matches!(
            quadrature(|_| f64::NAN, 0.0, 1.0, 1e-10),
            Err(NumericsError::NonFiniteIntegrand { .. })
        ));
    }
}
