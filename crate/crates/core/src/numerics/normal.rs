use crate::math;

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal cumulative distribution function.
///
/// Evaluated as `erfc(-u/√2)/2`, which keeps full relative accuracy in the
/// lower tail.
pub fn normal_cdf(u: f64) -> f64 {
    if u.is_nan() {
        return f64::NAN;
    }
    0.5 * libm::erfc(-u * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(u: f64) -> f64 {
    INV_SQRT_2PI * math::exp(-0.5 * u * u)
}
