//! Valuation and bidding engine for exclusive securities-lending auctions.
//!
//! The crate is `no_std` (with `alloc`) and covers four areas:
//!
//! - [`sim`]: log-normal portfolio histories (price, rates, borrow, locates,
//!   inventory, exclusive holdings) drawn from seeded parameter ranges.
//! - [`valuation`]: the ladder of exclusive valuations, transaction costs,
//!   daily P&L and the variance-weighted combination of valuation series.
//! - [`auction`]: equilibrium first-price sealed-bid strategies for uniform,
//!   log-normal and Irwin–Hall values, with reserve prices, uncertain bidder
//!   counts, asymmetric groups and interdependent values.
//! - [`numerics`]: adaptive quadrature, bracketed root finding, the normal CDF
//!   and a shooting solver for two-point boundary value problems.
//!
//! IO, file formats and the command line live in the companion `seclend` crate.

#![no_std]
#![warn(missing_debug_implementations)]
// Negated comparisons are how parameter checks reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

pub mod auction;
pub mod math;
pub mod numerics;
pub mod sim;
pub mod valuation;

/// Trading days per year used for daily accrual and path discretisation.
pub const TRADING_DAYS_PER_YEAR: f64 = 252.0;
