//! Single-series generators.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use super::SimError;
use crate::{math, TRADING_DAYS_PER_YEAR};

/// One exact log-normal step over `dt` years driven by the standard normal `z`.
#[inline]
pub fn gbm_step(x: f64, mu: f64, sigma: f64, dt: f64, z: f64) -> f64 {
    x * math::exp((mu - 0.5 * sigma * sigma) * dt + sigma * math::sqrt(dt) * z)
}

fn check_gbm(x0: f64, sigma: f64, n_days: usize) -> Result<(), SimError> {
    if !(x0 > 0.0 && x0.is_finite()) {
        return Err(SimError::NonPositiveStart(x0));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(SimError::NegativeVolatility(sigma));
    }
    if n_days == 0 {
        return Err(SimError::EmptyDimension("n_days"));
    }
    Ok(())
}

/// Daily geometric Brownian motion path of length `n_days` starting at `x0`.
pub fn simulate_gbm_path<R: Rng + ?Sized>(
    x0: f64,
    mu: f64,
    sigma: f64,
    n_days: usize,
    rng: &mut R,
) -> Result<Vec<f64>, SimError> {
    check_gbm(x0, sigma, n_days)?;
    let dt = 1.0 / TRADING_DAYS_PER_YEAR;
    let mut path = Vec::with_capacity(n_days);
    let mut x = x0;
    path.push(x);
    for _ in 1..n_days {
        let z: f64 = StandardNormal.sample(rng);
        x = gbm_step(x, mu, sigma, dt, z);
        path.push(x);
    }
    Ok(path)
}

/// Daily locates `|z_t|`, `z_t ~ N(μ_L, σ_L²)`.
pub fn simulate_locates<R: Rng + ?Sized>(
    mu_l: f64,
    sigma_l: f64,
    n_days: usize,
    rng: &mut R,
) -> Result<Vec<f64>, SimError> {
    if !(sigma_l >= 0.0 && sigma_l.is_finite()) {
        return Err(SimError::NegativeVolatility(sigma_l));
    }
    if !mu_l.is_finite() {
        return Err(SimError::NonFiniteParameter("locate_mean"));
    }
    Ok((0..n_days)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            math::abs(mu_l + sigma_l * z)
        })
        .collect())
}

/// Daily locates drawn from `Poisson(λ)`. `λ = 0` gives all zeros.
pub fn simulate_locates_poisson<R: Rng + ?Sized>(
    lambda: f64,
    n_days: usize,
    rng: &mut R,
) -> Result<Vec<f64>, SimError> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(SimError::NonFiniteParameter("locate_mean"));
    }
    if lambda == 0.0 {
        return Ok(alloc::vec![0.0; n_days]);
    }
    let dist = Poisson::new(lambda).map_err(|_| SimError::NonFiniteParameter("locate_mean"))?;
    Ok((0..n_days).map(|_| dist.sample(rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_vol_is_flat() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = simulate_gbm_path(100.0, 0.0, 0.0, 5, &mut rng).unwrap();
        assert_eq!(p, alloc::vec![100.0; 5]);
    }

    #[test]
    fn deterministic_for_seed() {
        let a = simulate_gbm_path(1.0, 0.0, 0.3, 50, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = simulate_gbm_path(1.0, 0.0, 0.3, 50, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn domain_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(simulate_gbm_path(0.0, 0.0, 0.1, 5, &mut rng).is_err());
        assert!(simulate_gbm_path(1.0, 0.0, -0.1, 5, &mut rng).is_err());
        assert!(simulate_gbm_path(1.0, 0.0, 0.1, 0, &mut rng).is_err());
        assert!(simulate_locates(0.0, -1.0, 5, &mut rng).is_err());
    }

    #[test]
    fn degenerate_locates() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(simulate_locates(0.0, 0.0, 4, &mut rng).unwrap(), alloc::vec![0.0; 4]);
        assert_eq!(
            simulate_locates(1000.0, 0.0, 4, &mut rng).unwrap(),
            alloc::vec![1000.0; 4]
        );
        assert_eq!(simulate_locates_poisson(0.0, 3, &mut rng).unwrap(), alloc::vec![0.0; 3]);
    }

    #[test]
    fn poisson_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xs = simulate_locates_poisson(40.0, 100_000, &mut rng).unwrap();
        let (m, v) = math::mean_variance(&xs);
        // Standard error of the mean is sqrt(40/1e5) = 0.02.
        assert!((m - 40.0).abs() < 0.1, "{m}");
        assert!((v - 40.0).abs() < 1.0, "{v}");
        assert!(xs.iter().all(|&x| x >= 0.0 && x == math::floor(x)));
    }
}
