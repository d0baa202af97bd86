use std::fmt;

use crate::error::{Error, Result};

/// A function of the sample size used as a price cap `g(n)` or a
/// confidence scale `f(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthFn {
    /// `coef · n^exponent`
    Power { coef: f64, exponent: f64 },
    /// `coef · ln n`
    Log { coef: f64 },
    Const(f64),
}

impl GrowthFn {
    pub const SQRT: GrowthFn = GrowthFn::Power {
        coef: 1.0,
        exponent: 0.5,
    };
    pub const QUARTER_DECAY: GrowthFn = GrowthFn::Power {
        coef: 1.0,
        exponent: -0.25,
    };

    pub fn eval(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            GrowthFn::Power { coef, exponent } => coef * n.powf(exponent),
            GrowthFn::Log { coef } => coef * n.ln(),
            GrowthFn::Const(c) => c,
        }
    }

    /// Accepts `sqrt`, `log`/`ln`, `n^e`, `c*n^e`, `c*log` and bare numbers.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().replace(' ', "");
        let err = |why: &str| Error::parse(s, why);
        let num = |x: &str| x.parse::<f64>().map_err(|_| err("bad number"));
        let (coef, body) = match t.split_once('*') {
            Some((c, b)) => (num(c)?, b.to_string()),
            None => (1.0, t.clone()),
        };
        match body.as_str() {
            "sqrt" | "sqrt(n)" => Ok(GrowthFn::Power {
                coef,
                exponent: 0.5,
            }),
            "log" | "ln" | "log(n)" | "ln(n)" => Ok(GrowthFn::Log { coef }),
            b if b.starts_with("n^") => Ok(GrowthFn::Power {
                coef,
                exponent: num(b[2..].trim_start_matches('(').trim_end_matches(')'))?,
            }),
            "n" => Ok(GrowthFn::Power { coef, exponent: 1.0 }),
            b if t.contains('*') => Err(err(&format!("unknown growth term `{b}`"))),
            b => Ok(GrowthFn::Const(num(b)?)),
        }
    }
}

impl fmt::Display for GrowthFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GrowthFn::Power { coef, exponent } if coef == 1.0 && exponent == 0.5 => write!(f, "sqrt"),
            GrowthFn::Power { coef, exponent } if coef == 1.0 => write!(f, "n^{exponent}"),
            GrowthFn::Power { coef, exponent } => write!(f, "{coef}*n^{exponent}"),
            GrowthFn::Log { coef } if coef == 1.0 => write!(f, "log"),
            GrowthFn::Log { coef } => write!(f, "{coef}*log"),
            GrowthFn::Const(c) => write!(f, "{c}"),
        }
    }
}

/// Cap `g` and confidence scale `f` for the capped and structural learners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFns {
    pub g: GrowthFn,
    pub f: GrowthFn,
    /// Sample size from which `f(n)²·n >= g(n)` must hold.
    pub n0: usize,
}

impl Default for GrowthFns {
    fn default() -> Self {
        Self {
            g: GrowthFn::SQRT,
            f: GrowthFn::QUARTER_DECAY,
            n0: 1,
        }
    }
}

impl GrowthFns {
    /// Checks `f(n)²·n >= g(n)` on a geometric grid of sizes from `n0` to
    /// about `10^9`, allowing relative rounding slack.
    pub fn validate(&self) -> Result<()> {
        let mut n = self.n0.max(1);
        while n <= 1_000_000_000 {
            let f = self.f.eval(n);
            let g = self.g.eval(n);
            if f < 0.0 || f * f * (n as f64) < g * (1.0 - 1e-12) {
                return Err(Error::Infeasible(format!(
                    "f(n)^2·n >= g(n) fails at n = {n}: f = {f}, g = {g}"
                )));
            }
            n = (n as f64 * 1.5).ceil() as usize;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(GrowthFn::parse("sqrt").unwrap(), GrowthFn::SQRT);
        assert_eq!(GrowthFn::parse("n^-0.25").unwrap(), GrowthFn::QUARTER_DECAY);
        assert_eq!(GrowthFn::parse("log").unwrap(), GrowthFn::Log { coef: 1.0 });
        assert_eq!(
            GrowthFn::parse("2*n^0.5").unwrap(),
            GrowthFn::Power {
                coef: 2.0,
                exponent: 0.5
            }
        );
        assert_eq!(GrowthFn::parse("7").unwrap(), GrowthFn::Const(7.0));
        assert!(GrowthFn::parse("2*banana").is_err());
        assert!(GrowthFn::parse("n^x").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["sqrt", "n^-0.25", "log", "3*n^0.3", "2*log", "5"] {
            let g = GrowthFn::parse(s).unwrap();
            assert_eq!(GrowthFn::parse(&g.to_string()).unwrap(), g);
        }
    }

    #[test]
    fn defaults_satisfy_constraint() {
        GrowthFns::default().validate().unwrap();
        assert_eq!(GrowthFn::SQRT.eval(100), 10.0);
        let bad = GrowthFns {
            f: GrowthFn::Power {
                coef: 1.0,
                exponent: -0.5,
            },
            ..GrowthFns::default()
        };
        assert!(bad.validate().is_err());
    }
}
