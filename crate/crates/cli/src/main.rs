//! `quizgen` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 script or parse error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "quizgen", version, about = "Build, inspect, preview and maintain quiz question banks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an authoring script with an injected seed and output path.
    Build(BuildArgs),
    /// Print question counts for a Moodle XML bank.
    Stats(StatsArgs),
    /// Write an HTML preview of a Moodle XML bank.
    Preview(PreviewArgs),
    /// Apply a bulk edit to a Moodle XML bank.
    Maintain(MaintainArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// Executable authoring script.
    script: PathBuf,
    /// RNG seed passed to the script.
    #[arg(long, env = "QUIZGEN_SEED")]
    seed: Option<u64>,
    /// Output path override passed to the script.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extra arguments for the script.
    #[arg(last = true)]
    script_args: Vec<String>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    bank: PathBuf,
    /// Warn when a question embeds more media than this many bytes.
    #[arg(long, default_value_t = quizgen::stats::DEFAULT_MEDIA_LIMIT)]
    media_limit: usize,
}

#[derive(Args, Debug)]
struct PreviewArgs {
    bank: PathBuf,
    /// Output HTML path; a temporary file is used when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Inline this MathJax script instead of referencing the CDN.
    #[arg(long, conflicts_with = "no_math")]
    inline_math: Option<PathBuf>,
    /// Leave out the math renderer entirely.
    #[arg(long)]
    no_math: bool,
}

#[derive(Args, Debug)]
struct MaintainArgs {
    bank: PathBuf,
    #[command(subcommand)]
    op: MaintainOp,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the result here instead of editing the bank in place.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the timestamped backup when editing in place.
    #[arg(long)]
    no_backup: bool,
}

#[derive(Subcommand, Debug)]
enum MaintainOp {
    /// Replace text in every question.
    ReplaceText {
        old: String,
        new: String,
        /// Treat OLD as a regular expression and NEW as its replacement.
        #[arg(long)]
        regex: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Set the grade of every wrong multiple-choice answer (percent, -100..=0).
    SetPenalty {
        #[arg(allow_negative_numbers = true)]
        fraction: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build(a) => commands::build(&a.script, a.seed, a.out.as_deref(), &a.script_args),
        Command::Stats(a) => commands::stats(&a.bank, a.media_limit),
        Command::Preview(a) => {
            commands::preview(&a.bank, a.out.as_deref(), a.inline_math.as_deref(), a.no_math)
        }
        Command::Maintain(a) => match a.op {
            MaintainOp::ReplaceText {
                old,
                new,
                regex,
                output,
            } => commands::maintain(
                &a.bank,
                commands::Edit::Replace { old, new, regex },
                output.out.as_deref(),
                !output.no_backup,
            ),
            MaintainOp::SetPenalty { fraction, output } => commands::maintain(
                &a.bank,
                commands::Edit::Penalty(fraction),
                output.out.as_deref(),
                !output.no_backup,
            ),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
