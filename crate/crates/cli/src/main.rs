mod args;
mod commands;
mod format;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Evolve(a) => commands::evolve(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Revival(a) => commands::revival(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Tunnel(a) => commands::run_tunnel(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
