//! `trigfrac`: solves, refinement studies and stability sweeps for the
//! time-fractional diffusion-wave solver.
//!
//! Exit status: 0 success, 1 usage error, 2 numerical failure, 3 stability
//! violation for `γ < 2`.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trigfrac_core::prelude::StartRule;

#[derive(Debug, Parser)]
#[command(name = "trigfrac", version, about = "Trigonometric B-spline solver for time-fractional diffusion-wave equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one problem and write knot profiles at the report times.
    Solve(SolveArgs),
    /// Error norms over a sequence of (N, M) resolutions, per γ.
    Converge(ConvergeArgs),
    /// Von Neumann amplification sweep.
    Stability(StabilityArgs),
    /// List the built-in problems.
    ListProblems,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ProblemSelector {
    /// Built-in problem id (see `list-problems`).
    #[arg(long)]
    pub problem: Option<u32>,
    /// TOML problem file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub selector: ProblemSelector,
    /// Number of spatial subintervals.
    #[arg(long = "N", default_value_t = 40)]
    pub n: usize,
    /// Number of time steps.
    #[arg(long = "M", default_value_t = 40)]
    pub m: usize,
    /// Overrides the order given by the problem (default 1.5 for built-ins).
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Final time.
    #[arg(long = "T")]
    pub horizon: Option<f64>,
    /// Comma-separated report times; defaults to the final time.
    #[arg(long, value_parser = parse_list)]
    pub times: Option<FloatList>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub selector: ProblemSelector,
    /// Comma-separated subinterval counts.
    #[arg(long = "N", value_parser = parse_usize_list, default_value = "20,40,80")]
    pub n: UsizeList,
    /// Comma-separated step counts, one per entry of `--N`.
    #[arg(long = "M", value_parser = parse_usize_list, default_value = "20,40,80")]
    pub m: UsizeList,
    /// Comma-separated orders; defaults to the problem's own.
    #[arg(long, value_parser = parse_list)]
    pub gamma: Option<FloatList>,
    #[arg(long = "T")]
    pub horizon: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long, value_parser = parse_list)]
    pub gammas: Option<FloatList>,
    #[arg(long, value_parser = parse_list)]
    pub hs: Option<FloatList>,
    #[arg(long, value_parser = parse_list)]
    pub dts: Option<FloatList>,
    #[arg(long, value_parser = parse_list)]
    pub alphas: Option<FloatList>,
    /// Values of `β h` in `[0, π]`.
    #[arg(long, value_parser = parse_list)]
    pub beta_h: Option<FloatList>,
    /// Length of each recursion.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, value_parser = parse_start_rule, default_value = "scheme")]
    pub start_rule: StartRule,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Comma-separated reals; the empty string is an empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct UsizeList(pub Vec<usize>);

fn split(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty())
}

fn parse_list(s: &str) -> Result<FloatList, String> {
    split(s)
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{p}' is not a finite number"))
        })
        .collect::<Result<_, _>>()
        .map(FloatList)
}

fn parse_usize_list(s: &str) -> Result<UsizeList, String> {
    split(s)
        .map(|p| p.parse::<usize>().map_err(|e| format!("'{p}': {e}")))
        .collect::<Result<_, _>>()
        .map(UsizeList)
}

fn parse_start_rule(s: &str) -> Result<StartRule, String> {
    s.parse().map_err(|e: trigfrac_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            // --help and --version are not errors
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(args) => commands::cmd_solve(&args),
        Command::Converge(args) => commands::cmd_converge(&args),
        Command::Stability(args) => commands::cmd_stability(&args),
        Command::ListProblems => commands::cmd_list_problems(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
