//! `sspread`: spectral scales, spreads and inequality checks from the
//! command line.
//!
//! Exit codes: 0 holds, 1 fails, 2 invalid input, 3 mode violation,
//! 4 unknown id.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sspread::spectra::Mode;
use sspread_cli::commands;
use sspread_cli::report::Report;

#[derive(Parser, Debug)]
#[command(name = "sspread", version, about = "Spectral spread and submajorization checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, env = "SSPREAD_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct ModeArgs {
    /// Operator model; overrides the file's `mode:` directive.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Number of scale entries to compute in compact and diagonal mode.
    #[arg(long)]
    horizon: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the spectral scale of a Hermitian matrix or diagonal operator.
    Scale {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Print the spectral spread.
    Spread {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Check one inequality on the given matrices.
    Check {
        ineq_id: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Block split for `key` and `tao_positive`.
        #[arg(long)]
        split: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run seeded random trials of one inequality.
    Fuzz {
        ineq_id: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Dimension range `a..b` (inclusive).
        #[arg(long, default_value = "2..8", value_parser = parse_dims)]
        dims: (usize, usize),
        #[command(flatten)]
        common: Common,
    },
    /// Recompute a worked example.
    Repro {
        example_id: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full property, fuzz and example suite.
    Suite {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|_| format!("unknown mode {s:?}; expected matrix, compact or diagonal"))
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if a == 0 || a > b {
        return Err(format!("need 1 <= a <= b, got {a}..{b}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, json_out) = match &cli.command {
        Command::Scale { common, .. } => ("scale", common.json),
        Command::Spread { common, .. } => ("spread", common.json),
        Command::Check { common, .. } => ("check", common.json),
        Command::Fuzz { common, .. } => ("fuzz", common.json),
        Command::Repro { common, .. } => ("repro", common.json),
        Command::Suite { common, .. } => ("suite", common.json),
    };
    let result = match cli.command {
        Command::Scale { file, mode, .. } => commands::scale(&file, mode.mode, mode.horizon),
        Command::Spread { file, mode, .. } => commands::spread(&file, mode.mode, mode.horizon),
        Command::Check {
            ineq_id,
            files,
            mode,
            split,
            ..
        } => commands::check(&ineq_id, &files, mode, split),
        Command::Fuzz {
            ineq_id,
            trials,
            dims,
            common,
        } => commands::fuzz(&ineq_id, trials, dims, common.seed),
        Command::Repro { example_id, .. } => commands::repro(&example_id),
        Command::Suite { common } => commands::suite(common.seed),
    };
    match result {
        Ok(out) => {
            if json_out {
                print!("{}", out.report.render_json());
            } else {
                print!("{}", out.table);
            }
            ExitCode::from(if out.report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("sspread {name}: {e}");
            if json_out {
                let mut r = Report::new(name);
                r.pass = false;
                r.set(
                    "error",
                    json!({ "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() }),
                );
                print!("{}", r.render_json());
            }
            ExitCode::from(e.exit_code())
        }
    }
}
