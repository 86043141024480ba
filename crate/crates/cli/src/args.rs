use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hypervol",
    version,
    about = "Volumes and volume-growth bounds of regular hyperbolic simplices"
)]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Volume of τ[n,t] by one or all integral forms.
    Volume(VolumeArgs),
    /// Volume-to-facet ratio against its lower/upper bounds.
    Ratio(RatioArgs),
    /// Ratio and bounds over a grid of (n, t).
    Sweep(SweepArgs),
    /// Structural and cross-model invariants at one (n, t).
    Check(CheckArgs),
    /// Circumradii r_k and orthoscheme edges d_k.
    Ladder(LadderArgs),
}

/// The simplex parameter: exactly one of `--t` and `--sin-t`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TArg {
    /// Angle parameter in radians, 0 ≤ t ≤ π/2.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,

    /// sin t instead of t.
    #[arg(long = "sin-t", allow_negative_numbers = true)]
    pub sin_t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// Relative tolerance of the quadrature.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Seed for the sampled checks and Monte Carlo.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Projective,
    Orthoscheme,
    Halfspace,
    All,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[arg(long)]
    pub n: usize,

    #[command(flatten)]
    pub t: TArg,

    #[arg(long, value_enum, default_value_t = MethodArg::Projective)]
    pub method: MethodArg,

    #[command(flatten)]
    pub quad: QuadArgs,

    /// Sample the projective integral instead of using adaptive quadrature.
    #[arg(long)]
    pub monte_carlo: bool,

    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    #[arg(long)]
    pub n: usize,

    #[command(flatten)]
    pub t: TArg,

    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,

    /// First t of an evenly spaced grid.
    #[arg(long, requires_all = ["t_stop", "t_step"], conflicts_with = "t_list")]
    pub t_start: Option<f64>,

    /// Last t of the grid (inclusive).
    #[arg(long)]
    pub t_stop: Option<f64>,

    #[arg(long)]
    pub t_step: Option<f64>,

    /// Explicit t values, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub t_list: Option<Vec<f64>>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: usize,

    #[command(flatten)]
    pub t: TArg,

    #[command(flatten)]
    pub quad: QuadArgs,

    /// Also tabulate cos t·atanh(sin t) as t → π/2 and compare the fitted
    /// limit with the claimed one.
    #[arg(long)]
    pub audit_limits: bool,
}

#[derive(Debug, Args)]
pub struct LadderArgs {
    #[arg(long)]
    pub n: usize,

    #[command(flatten)]
    pub t: TArg,
}
