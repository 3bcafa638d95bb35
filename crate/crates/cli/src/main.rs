mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tesscensus::census::SeedMode;
use tesscensus::tessmap::VertexConfiguration;

use error::{CliError, EXIT_OK};

/// Vertex censuses of tessellation patches, checked against exact generating functions.
#[derive(Debug, Parser)]
#[command(name = "tesscensus", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the catalog entries.
    Catalog(CatalogArgs),
    /// Grow a patch and dump its dart table.
    Build(BuildArgs),
    /// Count vertices by generation.
    Census(CensusArgs),
    /// Expand a generating function.
    Series(SeriesArgs),
    /// Recover a rational generating function from counts.
    Fit(FitArgs),
    /// Growth class and rate of a generating function.
    Growth(GrowthArgs),
    /// Solve the vertex-class system of the (6,8,8) dual.
    Derive(DeriveArgs),
    /// Lay out a patch in the disk or plane and write SVG.
    Render(RenderArgs),
    /// Compare censuses with the catalog series.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Expected terms listed per entry, generations 0..=N.
    #[arg(long, default_value_t = 7)]
    pub max_gen: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Vertex configuration, e.g. 6,8,8.
    #[arg(long)]
    pub config: VertexConfiguration,
    #[arg(long, default_value_t = 3)]
    pub layers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, conflicts_with = "entry", required_unless_present = "entry")]
    pub config: Option<VertexConfiguration>,
    /// Take configuration and seed from a catalog entry.
    #[arg(long)]
    pub entry: Option<String>,
    /// face, center or vertex.
    #[arg(long, conflicts_with = "entry")]
    pub seed: Option<SeedMode>,
    #[arg(long, default_value_t = 10)]
    pub max_gen: usize,
    /// Give up when this many layers do not certify max-gen.
    #[arg(long, default_value_t = tesscensus::census::DEFAULT_MAX_LAYERS)]
    pub max_layers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

/// A generating function named by catalog entry or by coefficient lists.
#[derive(Debug, Args)]
pub struct GfArgs {
    #[arg(long, conflicts_with_all = ["num", "den"], required_unless_present = "num")]
    pub entry: Option<String>,
    /// Numerator coefficients c0,c1,...
    #[arg(long, allow_hyphen_values = true, requires = "den")]
    pub num: Option<String>,
    /// Denominator coefficients c0,c1,...
    #[arg(long, allow_hyphen_values = true, requires = "num")]
    pub den: Option<String>,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub gf: GfArgs,
    #[arg(long, default_value_t = 20)]
    pub max_gen: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Counts file (list or generation,count CSV); stdin when absent or `-`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub gf: GfArgs,
    /// Root isolation tolerance; defaults to TESSCENSUS_TOL or 1e-9.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    /// Also expand every class through this generation.
    #[arg(long)]
    pub max_gen: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, default_value = "6,8,8")]
    pub config: VertexConfiguration,
    #[arg(long, default_value_t = 6)]
    pub layers: usize,
    /// Draw only vertices up to this generation.
    #[arg(long)]
    pub max_gen: Option<usize>,
    /// Comma-separated #rrggbb colours, one per generation, cycled.
    #[arg(long)]
    pub palette: Option<String>,
    /// Draw hyperbolic edges as arcs.
    #[arg(long)]
    pub geodesic: bool,
    /// Draw the disk boundary.
    #[arg(long)]
    pub boundary: bool,
    #[arg(long, default_value_t = 800.0)]
    pub size: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One entry; the whole catalog when absent.
    #[arg(long)]
    pub entry: Option<String>,
    /// Generations to check; each entry's default depth when absent.
    #[arg(long)]
    pub max_gen: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            return fail(CliError::usage(first));
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{}", e.to_json_line());
    debug_assert_ne!(e.exit, EXIT_OK);
    ExitCode::from(e.exit as u8)
}
