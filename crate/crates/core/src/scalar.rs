//! Scalar abstraction shared by prices, masses and revenues.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A real scalar usable as a price or probability.
///
/// Implemented for `f32` and `f64`. Monte Carlo summaries (means, standard
/// errors, fits) are always accumulated in `f64` regardless of the scalar the
/// distributions and learners use.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` constant. Never fails for the supported types.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Tolerance used for "sums to one" style checks: `1e-12` for `f64`,
    /// scaled up to a few ulps of accumulated error for narrower types.
    fn mass_tolerance() -> Self {
        let scaled = Self::epsilon() * Self::lit(64.0);
        scaled.max(Self::lit(1e-12))
    }
}

impl Real for f32 {}
impl Real for f64 {}
