mod compute;
mod error;
mod verify;
mod vhs_cmd;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodge_core::{Degree, GroupSpec};

use error::CliError;

/// Hodge-Poincare series of moduli of principal bundles on curves.
#[derive(Parser, Debug)]
#[command(name = "hodge-series", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a generating function and optionally its expansion.
    Compute(ComputeArgs),
    /// Run consistency checks and report PASS/FAIL per check.
    Verify(VerifyArgs),
    /// Evaluate a generating function at a special point.
    Specialize(SpecializeArgs),
    /// List Harder-Narasimhan strata up to a codimension bound.
    Strata(StrataArgs),
    /// Coefficients of the Hodge classes for a period matrix.
    Vhs(VhsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum What {
    Stack,
    Semistable,
    Moduli,
    FixedDet,
    Classifying,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum At {
    Poincare,
    ChiT,
    Euler,
    Signature,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Recursion,
    Classical,
    GoodCase,
    Corollaries,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Group, e.g. GL3, SO5, Sp2 or GL2xSO5.
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    /// Degree in pi_1 G, one comma-separated entry per factor (default 0).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_degree)]
    pub degree: Option<Degree>,
    #[arg(long, default_value_t = 2)]
    pub genus: u32,
    /// Allow genus above 8.
    #[arg(long)]
    pub allow_large_genus: bool,
    #[arg(long, value_enum, default_value_t = What::Semistable)]
    pub what: What,
}

impl Target {
    pub fn degree(&self) -> Degree {
        self.degree.clone().unwrap_or_else(|| self.group.zero_degree())
    }
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Also print the series truncated at this total degree.
    #[arg(long)]
    pub expand: Option<u32>,
}

#[derive(Args, Debug)]
pub struct SpecializeArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, value_enum)]
    pub at: At,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub genus_list: Vec<u32>,
    /// Truncation order of the recursion checks.
    #[arg(long, default_value_t = 20)]
    pub order: u32,
    #[arg(long)]
    pub allow_large_genus: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct StrataArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_degree)]
    pub degree: Option<Degree>,
    #[arg(long, default_value_t = 2)]
    pub genus: u32,
    #[arg(long)]
    pub allow_large_genus: bool,
    #[arg(long, default_value_t = 12)]
    pub max_codim: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
}

#[derive(Args, Debug)]
pub struct VhsArgs {
    /// JSON file with {"g": g, "tau": [[[re, im], ...], ...]}; `-` reads stdin.
    #[arg(long)]
    pub input: String,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Also print decimal approximations with this many digits.
    #[arg(long)]
    pub decimals: Option<usize>,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: hodge_core::RootDataError| e.to_string())
}

fn parse_degree(s: &str) -> Result<Degree, String> {
    s.parse().map_err(|e: hodge_core::RootDataError| e.to_string())
}

const MAX_GENUS: u32 = 8;

pub fn check_genus(g: u32, allow_large: bool) -> Result<(), CliError> {
    if g > MAX_GENUS && !allow_large {
        return Err(CliError::Usage(format!(
            "genus {g} exceeds {MAX_GENUS}; pass --allow-large-genus to override"
        )));
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("HODGE_SERIES_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("HODGE_SERIES_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Compute(a) => compute::compute(&a),
        Command::Specialize(a) => compute::specialize(&a),
        Command::Strata(a) => compute::strata(&a),
        Command::Verify(a) => verify::verify(&a),
        Command::Vhs(a) => vhs_cmd::vhs(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::VerifyFailed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
