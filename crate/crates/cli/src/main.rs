//! `debate`: run strategy-versus-strategy debates over a cut formula,
//! analyze the recorded pointer structures, or play a side interactively.
//!
//! Exit codes for `run`: 0 on a win or a lasso, 2 when the step budget is
//! exhausted, 1 on errors.

mod analyze;
mod play;
mod run;
mod spec;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "debate", version, about = "Backtracking debates over and/or formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a debate between two named strategies across a cut formula.
    Run(run::RunArgs),
    /// Analyze a trace file: views, partitions, definite segments, nesting,
    /// and the limit analysis of lassos.
    Analyze(analyze::AnalyzeArgs),
    /// Play one side of a game against a built-in strategy.
    Play(play::PlayArgs),
}

fn main() {
    #[cfg(unix)]
    unsafe {
        // Piping output into a pager that quits early should end the
        // process, not print a panic.
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems exit 1; exit 2 is reserved for exhausted
            // budgets. Help and version requests still exit 0.
            let code = if err.use_stderr() { 1 } else { 0 };
            err.print().ok();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Run(args) => run::main(args),
        Command::Analyze(args) => analyze::main(args),
        Command::Play(args) => play::main(args),
    };
    match code {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

/// Default step budget: `DEBATE_BUDGET` when set, else 256.
pub fn default_budget() -> usize {
    std::env::var("DEBATE_BUDGET").ok().and_then(|v| v.parse().ok()).unwrap_or(256)
}
