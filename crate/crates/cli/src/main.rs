mod cli;
mod commands;
mod failure;
mod svg;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command, ZooCommand};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Curve(args) => commands::curve::run(args),
        Command::Adversary(args) => commands::adversary::run(args),
        Command::Gadget(args) => commands::gadget::run(args),
        Command::Coin(args) => commands::coin::run(args),
        Command::Fit(args) => commands::fit::run(args),
        Command::Zoo {
            command: ZooCommand::List,
        } => commands::zoo::list(),
        Command::LearnerStdio { spec } => commands::stdio::serve(&spec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
