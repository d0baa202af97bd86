use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A target rate `φ(j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RateSpec {
    /// `1/j`
    Reciprocal,
    /// `j^-exponent`
    Power(f64),
    /// `1/ln(j + base)`
    InverseLog(f64),
    Constant(f64),
    /// Explicit values for `j = 1, 2, ...`; the last one repeats.
    List(Vec<f64>),
}

impl RateSpec {
    pub fn eval(&self, j: usize) -> f64 {
        let jf = j as f64;
        match self {
            RateSpec::Reciprocal => 1.0 / jf,
            RateSpec::Power(a) => jf.powf(-a),
            RateSpec::InverseLog(b) => 1.0 / (jf + b).ln(),
            RateSpec::Constant(v) => *v,
            RateSpec::List(v) => v[(j.max(1) - 1).min(v.len() - 1)],
        }
    }
}

impl fmt::Display for RateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateSpec::Reciprocal => write!(f, "1/j"),
            RateSpec::Power(a) => write!(f, "j^-{a}"),
            RateSpec::InverseLog(b) => write!(f, "1/ln(j+{b})"),
            RateSpec::Constant(v) => write!(f, "const:{v}"),
            RateSpec::List(v) => {
                let parts: Vec<String> = v.iter().map(f64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for RateSpec {
    type Err = Error;

    /// Accepts `1/j`, `j^-a`, `1/ln(j+b)`, `const:v` or a comma-separated
    /// list of values.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace(' ', "");
        let num = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::parse(s, format!("`{v}` is not a number")))
        };
        if t == "1/j" {
            return Ok(RateSpec::Reciprocal);
        }
        if let Some(a) = t.strip_prefix("j^-") {
            return Ok(RateSpec::Power(num(a)?));
        }
        if let Some(b) = t.strip_prefix("1/ln(j+").and_then(|r| r.strip_suffix(')')) {
            return Ok(RateSpec::InverseLog(num(b)?));
        }
        if let Some(v) = t.strip_prefix("const:") {
            return Ok(RateSpec::Constant(num(v)?));
        }
        let values = t.split(',').map(num).collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::parse(s, "empty rate list"));
        }
        Ok(RateSpec::List(values))
    }
}

/// `φ` and its running envelope `R` over `j = 1..=horizon`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFn {
    phi: Vec<f64>,
    envelope: Vec<f64>,
}

impl RateFn {
    pub fn horizon(&self) -> usize {
        self.phi.len()
    }

    /// `φ(j)` for `1 <= j <= horizon`.
    pub fn phi(&self, j: usize) -> f64 {
        self.phi[j - 1]
    }

    /// `R(j)` for `1 <= j <= horizon`.
    pub fn r(&self, j: usize) -> f64 {
        self.envelope[j - 1]
    }

    pub fn envelope(&self) -> &[f64] {
        &self.envelope
    }
}

/// `R(1) = φ(1)`, then `R(j) = φ(j)` when `φ(j) <= R(j-1)` and `R(j-1)`
/// otherwise. Values of `φ` must lie in `(0, 1]`.
pub fn monotone_envelope(phi: impl Fn(usize) -> f64, horizon: usize) -> Result<RateFn> {
    if horizon == 0 {
        return Err(Error::Domain("rate horizon must be at least 1".into()));
    }
    let mut values = Vec::with_capacity(horizon);
    let mut envelope: Vec<f64> = Vec::with_capacity(horizon);
    for j in 1..=horizon {
        let v = phi(j);
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::Domain(format!("phi({j}) = {v} is outside (0, 1]")));
        }
        let r = match envelope.last() {
            Some(&prev) if v > prev => prev,
            _ => v,
        };
        values.push(v);
        envelope.push(r);
    }
    Ok(RateFn {
        phi: values,
        envelope,
    })
}
