//! Learning-curve estimation, rate fitting and the `T(ε)` / `Δ(ε)`
//! localization diagnostics.

mod diagnostics;
mod estimate;
mod exact;
mod fit;
mod io;

pub use diagnostics::{delta_eps, t_eps, EpsOptimalSet, PriceInterval};
pub use estimate::{
    estimate_gap, expected_revenue, learning_curve, parallel_map, CurvePoint, LearningCurve,
    McConfig, RevenuePoint,
};
pub use exact::exact_expected_gap;
pub use fit::{decay_detected, fit_exponential, fit_power, fit_xy, RateFit, RateModel};
pub use io::{curve_from_csv, curve_to_csv, CSV_HEADER};
