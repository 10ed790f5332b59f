//! `bl`: exact weight combinatorics for classical Lie algebras.
//!
//! Exit codes: 0 on success, 1 on a domain error (printed as
//! `error[Name]: ...` on stderr) or failed verification, 2 on usage errors.

mod commands;
mod config;
mod output;

use clap::{CommandFactory, FromArgMatches, Parser};

use commands::Commands;
use output::OutputFormat;

#[derive(Parser)]
#[command(
    name = "bl",
    version,
    about = "Exact weight combinatorics for classical Lie algebras",
    args_override_self = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Size cap override: a bare matrix size or matrix=..,factor=..,k=..,t=..
    /// Takes precedence over the BL_CAP environment variable.
    #[arg(long, global = true)]
    cap: Option<String>,

    /// Config file holding key=value lines (or a previous JSON output);
    /// explicit flags win over file entries.
    #[arg(long, global = true)]
    config: Option<String>,

    #[command(subcommand)]
    command: Commands,
}

fn main() {
    let raw: Vec<String> = std::env::args().collect();
    let prog = raw.first().cloned().unwrap_or_else(|| "bl".into());
    let user = raw.get(1..).unwrap_or(&[]);
    let argv = match config::splice(prog, user) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };

    let parser = Cli::command().mut_subcommands(|sc| sc.args_override_self(true));
    let matches = match parser.try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => e.exit(),
    };
    let name = matches.subcommand_name().unwrap_or_default().to_string();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };

    let mut caps = bottomlayer::Caps::from_env();
    if let Some(cap) = &cli.cap {
        caps.apply_override(cap);
    }
    let ctx = commands::Ctx { caps, seed: cli.seed };
    match commands::dispatch(&cli.command, &ctx) {
        Ok((params, rendered)) => {
            let cap = cli.cap.as_deref();
            print!("{}", output::emit(&name, &params, cli.seed, cap, cli.output, &rendered));
            if rendered.failed {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            std::process::exit(1);
        }
    }
}
