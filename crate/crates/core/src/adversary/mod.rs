//! Executable lower-bound constructions: the learner-adaptive slow-rate
//! distribution, the uniform gadget, the coin game and the exponential-rate
//! witness pair.

mod coin;
mod gadget;
mod rate;
mod slow_rate;
mod witness;

pub use coin::{coin_decision, coin_game, coin_oracle_error, coin_sample_size, CoinGameResult};
pub use gadget::{
    check_membership, gadget_member, sweep_side, uniform_gadget, verify_gadget, GadgetMargin,
    GadgetParams, GadgetReport, Side, Sign,
};
pub use rate::{monotone_envelope, RateFn, RateSpec};
pub use slow_rate::{
    bound_learner_output, build_slow_rate_distribution, validate_construction, LevelCheck,
    OutputBound, ProbeConfig, ProbeStats, SlowRateConstruction, QUANTILE_DELTA,
};
pub use witness::{exp_lb_witness, Witness, WitnessRow};
