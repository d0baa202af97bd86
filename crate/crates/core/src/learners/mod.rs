//! Pricing algorithms behind one `Learner` interface.

mod algorithms;
mod growth;
mod subprocess;

use std::fmt;

use rand::RngCore;

pub use algorithms::{
    candidate_set, capped_erm, capped_erm_at, erm, structural_erm, truncated_erm, truncation_cap,
};
pub use growth::{GrowthFn, GrowthFns};
pub use subprocess::{SubprocessLearner, LEARNER_SEED_ENV};

use crate::empirical::{EmpiricalDist, Sample};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Maps a sample to a posted price, possibly using the supplied RNG stream.
pub trait Learner<T: Real = f64>: Send + Sync {
    fn name(&self) -> String;

    /// Deterministic learners ignore the RNG, so a single call gives their
    /// exact output.
    fn is_deterministic(&self) -> bool {
        true
    }

    /// Whether the learner may depend on the order of draws. Learners that
    /// return `false` are fed a sorted copy via [`Learner::decide_sorted`].
    fn needs_draw_order(&self) -> bool {
        true
    }

    fn decide(&self, sample: &Sample<T>, rng: &mut dyn RngCore) -> Result<T>;

    fn decide_sorted(&self, e: &EmpiricalDist<T>, rng: &mut dyn RngCore) -> Result<T> {
        self.decide(&Sample::from_values_unchecked(e.sorted_values().to_vec()), rng)
    }
}

impl<T: Real, L: Learner<T> + ?Sized> Learner<T> for Box<L> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn is_deterministic(&self) -> bool {
        (**self).is_deterministic()
    }
    fn needs_draw_order(&self) -> bool {
        (**self).needs_draw_order()
    }
    fn decide(&self, sample: &Sample<T>, rng: &mut dyn RngCore) -> Result<T> {
        (**self).decide(sample, rng)
    }
    fn decide_sorted(&self, e: &EmpiricalDist<T>, rng: &mut dyn RngCore) -> Result<T> {
        (**self).decide_sorted(e, rng)
    }
}

/// Runs `learner` on `sample`, handing order-insensitive learners a sorted
/// view.
pub(crate) fn run_learner<T, L>(learner: &L, sample: Sample<T>, rng: &mut dyn RngCore) -> Result<T>
where
    T: Real,
    L: Learner<T> + ?Sized,
{
    if learner.needs_draw_order() {
        learner.decide(&sample, rng)
    } else {
        let e = EmpiricalDist::from_values(sample.into_values())?;
        learner.decide_sorted(&e, rng)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LearnerKind {
    Erm,
    /// ERM below `max(ln n, 1)`.
    Truncated,
    /// ERM below `g(n)`.
    Capped,
    /// Largest sample price beating all smaller ones by `(p_j + p_i)·f(n)`.
    Structural,
    /// Always posts the same price.
    Constant(f64),
}

/// One of the built-in deterministic learners with its growth functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuiltinLearner {
    pub kind: LearnerKind,
    pub growth: GrowthFns,
}

impl BuiltinLearner {
    pub fn new(kind: LearnerKind) -> Self {
        Self {
            kind,
            growth: GrowthFns::default(),
        }
    }

    pub fn erm() -> Self {
        Self::new(LearnerKind::Erm)
    }

    pub fn truncated() -> Self {
        Self::new(LearnerKind::Truncated)
    }

    pub fn capped(g: GrowthFn) -> Self {
        let mut l = Self::new(LearnerKind::Capped);
        l.growth.g = g;
        l
    }

    pub fn structural(growth: GrowthFns) -> Self {
        Self {
            kind: LearnerKind::Structural,
            growth,
        }
    }

    pub fn constant(price: f64) -> Self {
        Self::new(LearnerKind::Constant(price))
    }

    pub fn price<T: Real>(&self, e: &EmpiricalDist<T>) -> T {
        let n = e.n();
        match self.kind {
            LearnerKind::Erm => erm(e),
            LearnerKind::Truncated => truncated_erm(e, n),
            LearnerKind::Capped => capped_erm(e, n, &self.growth.g),
            LearnerKind::Structural => structural_erm(e, T::lit(self.growth.f.eval(n))),
            LearnerKind::Constant(p) => T::lit(p),
        }
    }
}

impl fmt::Display for BuiltinLearner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LearnerKind::Erm => write!(f, "erm"),
            LearnerKind::Truncated => write!(f, "truncated"),
            LearnerKind::Capped => write!(f, "capped:g={}", self.growth.g),
            LearnerKind::Structural => write!(f, "structural:f={}", self.growth.f),
            LearnerKind::Constant(p) => write!(f, "const:{p}"),
        }
    }
}

impl<T: Real> Learner<T> for BuiltinLearner {
    fn name(&self) -> String {
        self.to_string()
    }

    fn needs_draw_order(&self) -> bool {
        false
    }

    fn decide(&self, sample: &Sample<T>, _rng: &mut dyn RngCore) -> Result<T> {
        Ok(self.price(&EmpiricalDist::new(sample)?))
    }

    fn decide_sorted(&self, e: &EmpiricalDist<T>, _rng: &mut dyn RngCore) -> Result<T> {
        Ok(self.price(e))
    }
}

/// Wraps a closure as a learner.
pub struct FnLearner<F> {
    name: String,
    deterministic: bool,
    func: F,
}

impl<F> FnLearner<F> {
    pub fn new(name: impl Into<String>, deterministic: bool, func: F) -> Self {
        Self {
            name: name.into(),
            deterministic,
            func,
        }
    }
}

impl<T, F> Learner<T> for FnLearner<F>
where
    T: Real,
    F: Fn(&Sample<T>, &mut dyn RngCore) -> T + Send + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    fn decide(&self, sample: &Sample<T>, rng: &mut dyn RngCore) -> Result<T> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok((self.func)(sample, rng))
    }
}

/// Parses a learner description:
///
/// - `erm`, `truncated`
/// - `capped` or `capped:g=sqrt`
/// - `structural` or `structural:f=n^-0.25,g=sqrt,n0=1`
/// - `const:7`
/// - `subprocess:<command line>` and `subprocess-randomized:<command line>`
pub fn parse_learner<T: Real>(spec: &str) -> Result<Box<dyn Learner<T>>> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match head.trim() {
        "subprocess" => return Ok(Box::new(SubprocessLearner::from_command_line(rest, true)?)),
        "subprocess-randomized" => {
            return Ok(Box::new(SubprocessLearner::from_command_line(rest, false)?))
        }
        _ => {}
    }
    Ok(Box::new(parse_builtin(spec)?))
}

pub fn parse_builtin(spec: &str) -> Result<BuiltinLearner> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut growth = GrowthFns::default();
    let kind = match head.trim() {
        "erm" => LearnerKind::Erm,
        "truncated" | "truncated_erm" => LearnerKind::Truncated,
        "capped" | "capped_erm" => LearnerKind::Capped,
        "structural" | "structural_erm" => LearnerKind::Structural,
        "const" | "constant" => {
            let p: f64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(spec, "constant learner needs a price"))?;
            if !(p >= 0.0) {
                return Err(Error::parse(spec, "price must be nonnegative"));
            }
            return Ok(BuiltinLearner::constant(p));
        }
        other => return Err(Error::parse(spec, format!("unknown learner `{other}`"))),
    };
    for kv in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::parse(kv, "expected key=value"))?;
        match k.trim() {
            "g" => growth.g = GrowthFn::parse(v)?,
            "f" => growth.f = GrowthFn::parse(v)?,
            "n0" => {
                growth.n0 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(v, "n0 must be an integer"))?
            }
            other => return Err(Error::parse(kv, format!("unknown key `{other}`"))),
        }
    }
    if kind == LearnerKind::Structural {
        growth.validate()?;
    }
    Ok(BuiltinLearner { kind, growth })
}
