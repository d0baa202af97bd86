use std::fs;

use revcurve::adversary::{
    coin_game, gadget_member, sweep_side, uniform_gadget, verify_gadget, CoinGameResult,
    GadgetMargin, GadgetParams, Side, Sign,
};
use revcurve::seed;
use serde::Serialize;

use super::{base_seed, write_json};
use crate::cli::GadgetArgs;
use crate::failure::{CmdResult, Failure};

const COIN_CONSTANTS: [f64; 3] = [1.0, 4.0, 16.0];

#[derive(Debug, Serialize)]
struct Member {
    sigma: Sign,
    atoms: Vec<(f64, f64)>,
    /// Sweep of the side that must lose more than gamma/4.
    losing_side: GadgetMargin<f64>,
    /// Sweep of the opposite side, which must not.
    other_side: GadgetMargin<f64>,
}

#[derive(Debug, Serialize)]
struct GadgetOutput {
    params: GadgetParams<f64>,
    midpoint: f64,
    members: Vec<Member>,
    all_pass: bool,
    coin_game: Vec<CoinGameResult>,
}

pub fn run(args: GadgetArgs) -> CmdResult {
    let gamma = match args.gamma.trim() {
        "auto" => None,
        g => Some(
            g.parse::<f64>()
                .map_err(|_| Failure::usage(format!("--gamma must be a number or `auto`, got `{g}`")))?,
        ),
    };
    let seed = base_seed(args.seed)?;
    let gp = uniform_gadget(args.x, args.q, args.p, gamma)?;
    let mut members = Vec::new();
    for sigma in [Sign::Minus, Sign::Plus] {
        let dist = gadget_member(&gp, sigma)?;
        let report = verify_gadget(&gp, &dist, sigma, args.resolution)?;
        let other = sweep_side(&gp, &dist, Side::losing_for(sigma.flip()), args.resolution)?;
        members.push(Member {
            sigma,
            atoms: dist.as_finite().map(|p| p.atoms().to_vec()).unwrap_or_default(),
            losing_side: report.margin,
            other_side: other,
        });
    }
    let all_pass = members.iter().all(|m| m.losing_side.pass && !m.other_side.pass);
    let coin = COIN_CONSTANTS
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let mut rng = seed::stream(seed, 0x6761_6467, i as u64);
            coin_game(gp.p, gp.gamma, c, args.trials, &mut rng)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let out = GadgetOutput {
        params: gp,
        midpoint: gp.midpoint,
        members,
        all_pass,
        coin_game: coin,
    };
    fs::create_dir_all(&args.out)?;
    write_json(&args.out.join("gadget.json"), &out)?;

    println!(
        "x = {}, q = {}, p = {}, gamma = {}, x_pq = {}, midpoint = {}",
        gp.x, gp.q, gp.p, gp.gamma, gp.x_pq, gp.midpoint
    );
    for m in &out.members {
        println!(
            "sigma {}: margin {:.3e} vs gamma/4 {:.3e} -> {}; other side margin {:.3e} -> {}",
            m.sigma,
            m.losing_side.margin,
            m.losing_side.threshold,
            if m.losing_side.pass { "pass" } else { "FAIL" },
            m.other_side.margin,
            if m.other_side.pass { "unexpected pass" } else { "fails as expected" }
        );
    }
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "c", "n", "error", "std_err", "oracle");
    for r in &out.coin_game {
        println!(
            "{:>6} {:>10} {:>10.5} {:>10.5} {:>10.5}",
            r.c, r.n, r.error_rate, r.std_err, r.oracle_error
        );
    }
    Ok(())
}
