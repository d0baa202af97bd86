use std::fs;

use revcurve::adversary::coin_game;
use revcurve::seed;

use super::{base_seed, parse_list, write_json};
use crate::cli::CoinArgs;
use crate::failure::CmdResult;

pub fn run(args: CoinArgs) -> CmdResult {
    let seed = base_seed(args.seed)?;
    let constants = parse_list::<f64>(&args.c, "c")?;
    let results = constants
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let mut rng = seed::stream(seed, 0x636f_696e, i as u64);
            coin_game(args.p, args.gamma, c, args.trials, &mut rng)
        })
        .collect::<Result<Vec<_>, _>>()?;
    for r in &results {
        println!("{}", serde_json::to_string(r)?);
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        write_json(&dir.join("coin.json"), &results)?;
    }
    Ok(())
}
