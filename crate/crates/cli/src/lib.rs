//! Command-line front end for `fracbound-core`.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;
pub mod spec;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, CliResult};
pub use report::Report;
use spec::{CollectionSpec, OrderSpec, WeightingSpec};

#[derive(Debug, Parser)]
#[command(name = "fracbound", version, about = "Fractional covering bounds for submodular set functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Logarithm base for entropy-valued output.
    #[arg(long, global = true, value_enum, default_value_t = LogBase::E)]
    pub log_base: LogBase,
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogBase {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Strong,
    Weak,
    Degree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sides {
    Both,
    Upper,
    Lower,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound the joint entropy of a distribution with a weighted collection.
    Bounds(BoundsArgs),
    /// Solve the fractional covering LP of a hypergraph exactly.
    LpCover(LpCoverArgs),
    /// Bound homomorphism, colouring or independent-set counts.
    Count(CountArgs),
    /// Determinantal sandwich and the classical inequalities.
    Detineq(DetineqArgs),
    /// Run a verification: submodular:distribution, submodular:matrix,
    /// supermodular:pair, prop3, duality, monotonicity or tensorization.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Distribution JSON file.
    pub distribution: PathBuf,
    #[arg(long, default_value = "singletons", value_parser = parse_spec::<CollectionSpec>)]
    pub collection: CollectionSpec,
    #[arg(long, default_value = "degree-covering", value_parser = parse_spec::<WeightingSpec>)]
    pub weighting: WeightingSpec,
    #[arg(long, default_value = "natural", value_parser = parse_spec::<OrderSpec>)]
    pub order: OrderSpec,
    #[arg(long, value_enum, default_value_t = Form::Strong)]
    pub form: Form,
    #[arg(long, value_enum, default_value_t = Sides::Both)]
    pub side: Sides,
}

#[derive(Debug, Args)]
pub struct LpCoverArgs {
    /// Hypergraph JSON file; alternatively give --collection and --n.
    pub hypergraph: Option<PathBuf>,
    #[arg(long, value_parser = parse_spec::<CollectionSpec>, requires = "n")]
    pub collection: Option<CollectionSpec>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated edge costs; unit costs by default.
    #[arg(long)]
    pub costs: Option<String>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Graph JSON file.
    pub graph: PathBuf,
    /// independent-sets, colorings:R or hom:FILE.
    #[arg(long, default_value = "independent-sets")]
    pub target: String,
    /// Also compute the exact count.
    #[arg(long)]
    pub with_exact: bool,
}

#[derive(Debug, Args)]
pub struct DetineqArgs {
    /// Matrix JSON file.
    pub matrix: PathBuf,
    #[arg(long, default_value = "singletons", value_parser = parse_spec::<CollectionSpec>)]
    pub collection: CollectionSpec,
    #[arg(long, default_value = "degree-covering", value_parser = parse_spec::<WeightingSpec>)]
    pub weighting: WeightingSpec,
    /// Block for the two-block inequality, as 1-based indices.
    #[arg(long)]
    pub fischer: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub kind: String,
    /// Input JSON file (not needed for prop3).
    pub input: Option<PathBuf>,
    #[arg(long, value_parser = parse_spec::<CollectionSpec>)]
    pub collection: Option<CollectionSpec>,
    #[arg(long, value_parser = parse_spec::<WeightingSpec>)]
    pub weighting: Option<WeightingSpec>,
}

fn parse_spec<T: std::str::FromStr<Err = CliError>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

/// Runs a parsed command. Violations come back as `Err(CliError::Violation)`
/// carrying the full report.
pub fn run(cli: &Cli) -> CliResult<Report> {
    let report = match &cli.command {
        Command::Bounds(a) => commands::bounds(a, cli.log_base)?,
        Command::LpCover(a) => commands::lp_cover(a)?,
        Command::Count(a) => commands::count(a)?,
        Command::Detineq(a) => commands::detineq(a)?,
        Command::Check(a) => commands::check(a, cli.log_base)?,
    };
    if report.all_hold() {
        Ok(report)
    } else {
        Err(CliError::Violation(Box::new(report)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fracbound_core::Error;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Parse(String::new()).exit_code(), 2);
        assert_eq!(CliError::from(Error::NotRegular).exit_code(), 3);
        assert_eq!(CliError::from(Error::GuardExceeded { what: "x", limit: 1 }).exit_code(), 4);
        let mut report = Report::new("t");
        report.assert_slack("fails", -1.0);
        assert!(!report.all_hold());
        assert_eq!(CliError::Violation(Box::new(report)).exit_code(), 5);
    }

    #[test]
    fn global_flags_parse() {
        let cli = Cli::try_parse_from(["fracbound", "check", "prop3", "--log-base", "2", "--json"]).unwrap();
        assert_eq!(cli.log_base, LogBase::Two);
        assert!(cli.json);
        assert!(Cli::try_parse_from(["fracbound", "check", "prop3", "--log-base", "10"]).is_err());
        let report = run(&cli).unwrap();
        assert!(report.to_json().contains("\"tolerance\""));
    }
}
