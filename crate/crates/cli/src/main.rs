mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn parse(argv: &[String]) -> Cli {
    Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit())
}

fn run(argv: Vec<String>) -> Result<(), CliError> {
    let mut cli = parse(&argv);
    let mut argv = argv;
    if let Some(path) = cli.command.spec().config.clone() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        let entries = args::parse_config(&text).map_err(CliError::Validation)?;
        argv = args::merge_config(&argv, &entries);
        cli = parse(&argv);
    }
    let head = commands::header(&argv);
    let csv = match &cli.command {
        Command::Design(a) => commands::design(a, &head)?,
        Command::Simulate(a) => commands::simulate(a, &head)?,
        Command::Bangbang(a) => commands::bangbang(a, &head)?,
        Command::Reference(a) => commands::reference(a, &head)?,
        Command::Sweep(a) => commands::sweep(a, &head)?,
    };
    match &cli.command.spec().out {
        Some(path) => std::fs::write(path, csv)?,
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(csv.as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
