use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use coregame::game::DEFAULT_VERTEX_CAP;
use coregame::io::{exit_code, parse_game, run_command, Command, Options, DEFAULT_SEED};
use coregame::matching::DEFAULT_MULTIPLICITY_CAP;
use coregame::{Caps, Error};

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Core imputations of matching and b-matching games, in exact arithmetic.
///
/// Exit status: 0 success, 1 analysis finding (e.g. not in the core),
/// 2 input error, 3 enumeration cap exceeded.
#[derive(Parser)]
#[command(name = "coregame", version)]
struct Cli {
    /// worth, dual, imputation, classify, payments, concurrency, antipodal,
    /// degeneracy, system, check, dual-image or examples
    command: String,
    /// Game file (TOML).
    #[arg(long)]
    game: Option<PathBuf>,
    /// Comma separated profits in vertex order, for `check` and `dual-image`.
    #[arg(long)]
    imputation: Option<String>,
    /// Largest total vertex capacity for exhaustive b-matching enumeration.
    #[arg(long, default_value_t = DEFAULT_MULTIPLICITY_CAP)]
    cap: u64,
    /// Largest vertex count for coalition enumeration.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    vertex_cap: usize,
    /// Seed for sampling core vertices.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let command: Command = cli.command.parse()?;
    let game = match (&cli.game, command.needs_game()) {
        (Some(path), true) => Some(parse_game(&std::fs::read_to_string(path)?)?),
        (None, true) => return Err(Error::Parse { location: "arguments".into(), message: "missing --game".into() }),
        (_, false) => None,
    };
    let options = Options { caps: Caps { vertices: cli.vertex_cap, multiplicity: cli.cap }, seed: cli.seed };
    let report = run_command(command, game.as_ref(), cli.imputation.as_deref(), &options)?;
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(if report.finding.is_some() { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(&cli).unwrap_or_else(|e| {
        eprintln!("coregame: {e}");
        exit_code(&e)
    });
    ExitCode::from(code as u8)
}
