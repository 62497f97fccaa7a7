//! Shared numerical kernel.
//!
//! Everything here is pure and reentrant: closures are borrowed, nothing is
//! cached between calls.

mod normal;
mod ode;
mod quadrature;
mod roots;
mod shooting;

pub use normal::{normal_cdf, normal_pdf};
pub use ode::{integrate_ode, OdeOptions, OdeOutcome, Trajectory};
pub use quadrature::{quadrature, quadrature_with_breaks, QuadratureResult, Quadrature};
pub use roots::{find_root, RootFinder, RootResult};
pub use shooting::{shoot_bvp, BvpSolution, ShootingOptions};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
    #[error(
        "quadrature did not reach tolerance {tol:e} after {subdivisions} subdivisions \
         (value {value}, error estimate {error:e})"
    )]
    QuadratureNotConverged {
        value: f64,
        error: f64,
        tol: f64,
        subdivisions: usize,
    },
    #[error("root is not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("function is not finite at x = {x}")]
    NonFiniteFunction { x: f64 },
    #[error("root finder exhausted {iterations} iterations (bracket [{lo}, {hi}])")]
    RootNotConverged { lo: f64, hi: f64, iterations: usize },
    #[error("ODE step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error(
        "shooting parameter is not bracketed (lower end too high: {lower_too_high}, \
         upper end too high: {upper_too_high})"
    )]
    ShootingBracket {
        lower_too_high: bool,
        upper_too_high: bool,
    },
    #[error("shooting did not converge: boundary mismatch {mismatch:e} at endpoint {endpoint}")]
    ShootingNotConverged { endpoint: f64, mismatch: f64 },
}
