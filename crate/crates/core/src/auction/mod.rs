//! Equilibrium bids in first-price sealed-bid auctions for an exclusive.
//!
//! Settings covered: symmetric independent private values (general,
//! uniform, log-normal), reserve prices, an uncertain number of bidders,
//! two asymmetric groups, interdependent Irwin–Hall values, and the
//! combination of interdependence, reserve and bidder-count uncertainty.

mod asymmetric;
mod curve;
mod distribution;
mod interdependent;
mod reserve;
mod symmetric;
mod variable;

pub use asymmetric::{
    solve_asymmetric_two_group, solve_asymmetric_two_group_with_tol, AsymmetricEquilibrium, ASYMMETRIC_LEFT_TOL,
};
pub use curve::{BidCurve, BidPoint, BoundaryCheck};
pub use distribution::{ValueDistribution, LOGNORMAL_TAIL_Z};
pub use interdependent::{
    bid_combined_realistic, bid_combined_variable, bid_interdependent_irwin_hall, irwin_hall_power_integral,
    screening_condition, screening_level, InterdependentMethod,
};
pub use reserve::{
    bid_reserve_general, bid_reserve_lognormal, bid_reserve_lognormal_printed, bid_reserve_uniform, optimal_reserve,
    ReserveMethod,
};
pub use symmetric::{
    bid_lognormal, bid_symmetric_general, bid_uniform, expected_payoff, expected_revenue, inverse_bid,
    ExpectedRevenue, LogNormalMethod,
};
pub use variable::{bid_variable_bidders, bid_variable_general, bid_variable_uniform, bidder_count_pmf};

use alloc::vec::Vec;
use thiserror::Error;

use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AuctionError {
    #[error("at least {min} bidders are required, got {m}")]
    InvalidBidderCount { m: u32, min: u32 },
    #[error("value {x} lies outside the support [{lo}, {hi}]")]
    OutsideSupport { x: f64, lo: f64, hi: f64 },
    #[error("value {x} is below the reserve {r}; no bid")]
    BelowReserve { x: f64, r: f64 },
    #[error("signal {x} is below the screening level {x_star}; no bid")]
    BelowScreening { x: f64, x_star: f64 },
    #[error("reserve {r} exceeds the largest conditional value {max}; nobody participates")]
    NoParticipation { r: f64, max: f64 },
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("bidder-count beliefs are invalid: {0}")]
    InvalidBeliefs(&'static str),
    #[error("no optimal reserve on the support for seller value {x_s}")]
    NoReserveSolution { x_s: f64 },
    #[error("numeric failure: {0}")]
    NumericFailure(&'static str),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub(crate) fn check_bidders(m: u32, min: u32) -> Result<(), AuctionError> {
    if m < min {
        Err(AuctionError::InvalidBidderCount { m, min })
    } else {
        Ok(())
    }
}

/// Parameters of an auction setting shared by the bid functions.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct BidContext {
    /// Number of bidders `M` (the maximum when `beliefs` is set).
    pub bidders: u32,
    /// Reserve price `r ≥ 0`.
    pub reserve: f64,
    /// `p_l`, the probability of facing `l` rivals, for `l = 0..M−1`.
    pub beliefs: Option<Vec<f64>>,
    /// Weight of a bidder's own signal in its value.
    pub alpha: f64,
    /// Weight of the highest rival signal in a bidder's value.
    pub xi: f64,
    /// Seller's own value of the exclusive.
    pub seller_value: f64,
}

impl Default for BidContext {
    fn default() -> Self {
        Self {
            bidders: 2,
            reserve: 0.0,
            beliefs: None,
            alpha: 1.0,
            xi: 0.0,
            seller_value: 0.0,
        }
    }
}

impl BidContext {
    /// Checks the context against a value distribution.
    pub fn validate(&self, dist: &ValueDistribution) -> Result<(), AuctionError> {
        dist.validate()?;
        check_bidders(self.bidders, 1)?;
        let hi = dist.upper();
        if !(self.reserve >= 0.0 && self.reserve < hi) {
            return Err(AuctionError::InvalidParameter { name: "reserve", value: self.reserve });
        }
        for (name, w) in [("alpha", self.alpha), ("xi", self.xi)] {
            if !(0.0..=1.0).contains(&w) {
                return Err(AuctionError::InvalidParameter { name, value: w });
            }
        }
        if !(self.seller_value >= 0.0 && self.seller_value < hi) {
            return Err(AuctionError::InvalidParameter { name: "seller_value", value: self.seller_value });
        }
        if let Some(p) = &self.beliefs {
            validate_beliefs(p, self.bidders)?;
        }
        Ok(())
    }
}

pub(crate) fn validate_beliefs(p: &[f64], m: u32) -> Result<(), AuctionError> {
    if p.len() != m as usize {
        return Err(AuctionError::InvalidBeliefs("length must equal the bidder count"));
    }
    if p.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(AuctionError::InvalidBeliefs("probabilities must lie in [0, 1]"));
    }
    let s: f64 = p.iter().sum();
    if crate::math::abs(s - 1.0) > 1e-9 {
        return Err(AuctionError::InvalidBeliefs("probabilities must sum to one"));
    }
    Ok(())
}
