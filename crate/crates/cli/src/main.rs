//! `iv` — impact-vitality analysis of citation records.
//!
//! Reads per-year citing-publication counts (and optionally researcher
//! profiles with PhD years and selection outcomes) and reports the
//! impact-vitality indicator: a single value per researcher-year that is
//! above one while citation interest grows and below one while it fades.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use iv_core::{Year, MAX_YEAR, MIN_YEAR};
use output::OutputFormat;

#[derive(Parser)]
#[command(
    name = "iv",
    version,
    about = "Impact-vitality analysis of citation records",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the indicator for one researcher at one year.
    Compute(ComputeArgs),
    /// Evaluate the indicator year by year, for one researcher or a cohort.
    Series(SeriesArgs),
    /// Cross-tabulate selection outcomes against the all-years criterion.
    Table(TableArgs),
    /// Show how adding citations to single years moves the indicator.
    Perturb(PerturbArgs),
}

/// How the citation window for an evaluation year is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Windows anchored at the researcher's PhD year, growing by one year
    /// per evaluation year.
    Phd,
    /// A fixed-length window ending at each evaluation year.
    Moving,
}

fn year_parser() -> clap::builder::RangedI64ValueParser<Year> {
    clap::value_parser!(Year).range(i64::from(MIN_YEAR)..=i64::from(MAX_YEAR))
}

#[derive(Args)]
struct ComputeArgs {
    /// Citation counts file (researcher_id,year,citing_publications).
    #[arg(long, value_name = "FILE")]
    counts: PathBuf,
    /// Researcher to evaluate.
    #[arg(long, value_name = "ID")]
    researcher: String,
    /// Most recent year of the window.
    #[arg(long, value_name = "YEAR", value_parser = year_parser())]
    year: Year,
    /// Window length in years.
    #[arg(long, value_name = "N")]
    window: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct SeriesArgs {
    /// Citation counts file (researcher_id,year,citing_publications).
    #[arg(long, value_name = "FILE")]
    counts: PathBuf,
    /// Researcher profiles file (researcher_id,phd_year,selected);
    /// required with --mode phd, restricts --mode moving to the cohort.
    #[arg(long, value_name = "FILE")]
    profiles: Option<PathBuf>,
    /// Window policy.
    #[arg(long, value_enum)]
    mode: Mode,
    /// First year to evaluate; required with --mode moving, optional
    /// lower bound with --mode phd (which starts the year after the PhD).
    #[arg(long, value_name = "YEAR", value_parser = year_parser())]
    from: Option<Year>,
    /// Last year to evaluate.
    #[arg(long, value_name = "YEAR", value_parser = year_parser())]
    to: Year,
    /// Moving-window length in years.
    #[arg(long, value_name = "N", default_value_t = 5)]
    window: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Citation counts file (researcher_id,year,citing_publications).
    #[arg(long, value_name = "FILE")]
    counts: PathBuf,
    /// Researcher profiles file (researcher_id,phd_year,selected).
    #[arg(long, value_name = "FILE")]
    profiles: PathBuf,
    /// Last evaluation year; each researcher is evaluated from the year
    /// after their PhD through this year.
    #[arg(long, value_name = "YEAR", value_parser = year_parser())]
    to: Year,
    /// Vitality criterion: every defined year must reach this value.
    #[arg(long, value_name = "T", default_value_t = 1.0)]
    threshold: f64,
    /// Tolerance below the threshold that still counts as reaching it.
    #[arg(long, value_name = "E", default_value_t = 1e-9)]
    epsilon: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct PerturbArgs {
    /// Citation counts file (researcher_id,year,citing_publications).
    #[arg(long, value_name = "FILE")]
    counts: PathBuf,
    /// Researcher to evaluate.
    #[arg(long, value_name = "ID")]
    researcher: String,
    /// Most recent year of the window.
    #[arg(long, value_name = "YEAR", value_parser = year_parser())]
    year: Year,
    /// Window length in years.
    #[arg(long, value_name = "N")]
    window: usize,
    /// Citing publications added to one window year at a time; may be
    /// negative, in which case counts clamp at zero.
    #[arg(
        long,
        value_name = "D",
        default_value_t = 1,
        allow_negative_numbers = true
    )]
    delta: i64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            process::exit(code);
        }
    };
    if let Err(err) = commands::run(cli.command) {
        eprintln!("error: {err}");
        process::exit(err.exit_code());
    }
}
