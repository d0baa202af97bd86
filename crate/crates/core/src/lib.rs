//! Learning curves for posted-price revenue maximization.
//!
//! - [`dist`]: valuation distributions with exact survival, revenue and optimum.
//! - [`empirical`]: samples, empirical revenue and DKW utilities.
//! - [`learners`]: ERM and its truncated, capped and structural variants.
//! - [`adversary`]: executable lower-bound constructions.
//! - [`curves`]: Monte Carlo learning curves, rate fits and `Δ(ε)` diagnostics.
//!
//! Distribution, sample and learner types are generic over a [`Real`]
//! scalar and default to `f64`; the aliases below fix the scalar.

pub mod adversary;
pub mod curves;
pub mod dist;
pub mod empirical;
pub mod error;
pub mod learners;
pub mod scalar;
pub mod seed;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Distribution64 = dist::Distribution<f64>;
pub type Distribution32 = dist::Distribution<f32>;
pub type FinitePmf64 = dist::FinitePmf<f64>;
pub type FinitePmf32 = dist::FinitePmf<f32>;
pub type Sample64 = empirical::Sample<f64>;
pub type Sample32 = empirical::Sample<f32>;
pub type EmpiricalDist64 = empirical::EmpiricalDist<f64>;
pub type EmpiricalDist32 = empirical::EmpiricalDist<f32>;
pub type GadgetParams64 = adversary::GadgetParams<f64>;
pub type GadgetParams32 = adversary::GadgetParams<f32>;
