use std::fs;
use std::process::ExitCode;

use clap::Parser;

use nvalg_cli::{
    construct, execute, Cli, CliError, Command, Format, Outcome, EXIT_FAILURE, EXIT_REPLAY_MISMATCH,
};

fn write(out: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let out = cli.opts.out.as_deref();
    if let Command::Construct { recipe } = &cli.command {
        write(out, &construct(recipe)?)?;
        return Ok(true);
    }
    let env = execute(&cli.command, &cli.opts)?;
    let text = match cli.opts.format {
        Format::Structured => env.to_json(),
        Format::Text => env.report.to_text(),
    };
    write(out, &text)?;
    let replay_ok = match &env.report.outcome {
        Outcome::Replay {
            witnesses,
            confirmed,
            failures,
            ..
        } => failures.is_empty() && witnesses == confirmed,
        _ => env.report.replay.as_ref().is_none_or(|r| r.ok()),
    };
    Ok(replay_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("nva: witness replay failed");
            ExitCode::from(EXIT_REPLAY_MISMATCH as u8)
        }
        Err(e) => {
            eprintln!("nva: {e}");
            ExitCode::from(EXIT_FAILURE as u8)
        }
    }
}
