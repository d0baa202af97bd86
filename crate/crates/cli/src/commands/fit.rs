use std::fs;

use revcurve::curves::curve_from_csv;

use super::{fit_summary, print_fit_summary};
use crate::cli::FitArgs;
use crate::failure::{CmdResult, Failure};

pub fn run(args: FitArgs) -> CmdResult {
    let text = fs::read_to_string(&args.csv)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.csv.display())))?;
    let curve = curve_from_csv(&text)?;
    let summary = fit_summary(&curve);
    print_fit_summary(&summary)?;
    if summary.power.is_none() && summary.exponential.is_none() {
        return Err(Failure::Infeasible(summary.fit_errors.join("; ")));
    }
    Ok(())
}
