pub mod adversary;
pub mod coin;
pub mod curve;
pub mod fit;
pub mod gadget;
pub mod stdio;
pub mod zoo;

use std::fs;
use std::path::Path;

use revcurve::curves::{decay_detected, fit_exponential, fit_power, LearningCurve, RateFit};
use revcurve::dist::{parse_dist_spec, Distribution};
use serde::Serialize;

use crate::failure::Failure;

pub const SEED_ENV: &str = "REVCURVE_SEED";

/// The flag if given, else `$REVCURVE_SEED`, else 0.
pub fn base_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{SEED_ENV}=`{v}` is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad {what} entry `{}`", t.trim())))
        })
        .collect()
}

/// A zoo spec, or a path to a distribution JSON document.
pub fn load_dist(spec: &str) -> Result<Distribution, Failure> {
    let path = Path::new(spec);
    if spec.ends_with(".json") {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {spec}: {e}")))?;
        return serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("bad distribution JSON in {spec}: {e}")));
    }
    Ok(parse_dist_spec(spec)?)
}

pub fn write_json<V: Serialize>(path: &Path, value: &V) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct FitSummary {
    pub power: Option<RateFit>,
    pub exponential: Option<RateFit>,
    /// Why a fit is missing, if one is.
    pub fit_errors: Vec<String>,
    pub decay_detected: bool,
}

pub fn fit_summary(curve: &LearningCurve) -> FitSummary {
    let mut fit_errors = Vec::new();
    let power = fit_power(curve).map_err(|e| fit_errors.push(format!("power: {e}"))).ok();
    let exponential = fit_exponential(curve)
        .map_err(|e| fit_errors.push(format!("exponential: {e}")))
        .ok();
    let decay = power.as_ref().is_some_and(decay_detected);
    FitSummary {
        power,
        exponential,
        fit_errors,
        decay_detected: decay,
    }
}

pub fn print_fit_summary(summary: &FitSummary) -> Result<(), Failure> {
    println!("{}", serde_json::to_string(summary)?);
    if !summary.decay_detected {
        println!("no positive decay detected");
    }
    Ok(())
}
