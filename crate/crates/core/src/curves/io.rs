use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{CurvePoint, LearningCurve};

pub const CSV_HEADER: &str = "n,trials,mean_gap,std_err,seed";

/// One row per point. Floats use the shortest decimal form that parses back
/// to the same `f64`.
pub fn curve_to_csv(curve: &LearningCurve) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in &curve.points {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.n, p.trials, p.mean_gap, p.std_err, curve.base_seed
        )
        .expect("writing to a String");
    }
    out
}

/// Parses the output of [`curve_to_csv`]; learner and distribution names are
/// not part of the CSV and come back empty.
pub fn curve_from_csv(text: &str) -> Result<LearningCurve> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::parse(
                other.unwrap_or(""),
                format!("expected header `{CSV_HEADER}`"),
            ))
        }
    }
    let mut points = Vec::new();
    let mut seed = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 5 {
            return Err(Error::parse(line, "expected 5 columns"));
        }
        let bad = |what: &str| Error::parse(line, format!("bad {what}"));
        points.push(CurvePoint {
            n: cols[0].parse().map_err(|_| bad("n"))?,
            trials: cols[1].parse().map_err(|_| bad("trials"))?,
            mean_gap: cols[2].parse().map_err(|_| bad("mean_gap"))?,
            std_err: cols[3].parse().map_err(|_| bad("std_err"))?,
        });
        seed = cols[4].parse().map_err(|_| bad("seed"))?;
    }
    Ok(LearningCurve {
        learner: String::new(),
        distribution: String::new(),
        points,
        base_seed: seed,
    })
}
