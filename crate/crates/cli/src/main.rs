use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = trilo_cli::Cli::parse();
    trilo_cli::exit_status(trilo_cli::dispatch(cli.command))
}
