use std::io::{self, Read};

use revcurve::empirical::Sample;
use revcurve::learners::{parse_builtin, Learner, LEARNER_SEED_ENV};
use revcurve::seed;

use crate::failure::{CmdResult, Failure};

/// Reads `n` and `n` values from stdin and prints the learner's price.
pub fn serve(spec: &str) -> CmdResult {
    let learner = parse_builtin(spec)?;
    let mut input = String::new();
    io::stdin().read_to_string(&mut input)?;
    let mut tokens = input.split_whitespace();
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Failure::usage("expected the sample size first"))?;
    let values = tokens
        .take(n)
        .map(|t| t.parse::<f64>().map_err(|_| Failure::usage(format!("bad value `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != n {
        return Err(Failure::usage(format!("expected {n} values, got {}", values.len())));
    }
    let seed = std::env::var(LEARNER_SEED_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let price = learner.decide(&Sample::new(values)?, &mut seed::stream(seed, 0, 0))?;
    println!("{price}");
    Ok(())
}
