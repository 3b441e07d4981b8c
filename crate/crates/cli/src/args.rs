use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heisenhardy::{Point, WeightKind};

#[derive(Parser, Debug)]
#[command(name = "heisenhardy", version, about = "Boundary distances and Hardy quotients on convex polytopes in the Heisenberg group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Boundary distances at one interior point.
    Distance {
        #[arg(long)]
        polytope: PathBuf,
        /// Query point as X,Y,Z.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
    },
    /// Run the certification checks and report pass/fail per check.
    Verify(VerifyArgs),
    /// Root of the face-count equation.
    Cm {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Closed-form Hardy constants.
    Constants(ConstantsArgs),
    /// Discrete Hardy quotient on a polytope.
    Quotient(QuotientArgs),
    /// Write a polytope file.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid resolution for the quotient checks.
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u64).range(16..))]
    pub grid: u64,
    /// Sample count for the randomized checks.
    #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Comma-separated check ids to run.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstantKind {
    #[value(name = "3.2")]
    Polytope,
    #[value(name = "6.2")]
    Assumption,
    #[value(name = "3.3")]
    Epsilon,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[arg(long, value_enum)]
    pub theorem: ConstantKind,
    /// Face count for 3.2.
    #[arg(long)]
    pub m: Option<u32>,
    /// Structural parameter for 6.2.
    #[arg(long)]
    pub a: Option<f64>,
    /// Approximation parameter for 3.3.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Where to write the cylinder polytope for 3.3.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Sides of the cylinder polytope for 3.3.
    #[arg(long, default_value_t = 64)]
    pub sides: usize,
}

#[derive(Args, Debug)]
pub struct QuotientArgs {
    #[arg(long)]
    pub polytope: PathBuf,
    #[arg(long, default_value = "DELTA_C")]
    pub weight: WeightKind,
    /// Minimize the quotient over grid functions.
    #[arg(long, conflicts_with_all = ["trial", "trials"])]
    pub minimize: bool,
    /// Evaluate the trial function with index n.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub trial: Option<u32>,
    /// Sweep over trial indices, e.g. 1,2,5,10.
    #[arg(long, value_delimiter = ',', conflicts_with = "trial")]
    pub trials: Option<Vec<u32>>,
    /// Grid resolution; a comma-separated list runs a refinement sweep.
    #[arg(long, value_delimiter = ',', default_value = "48")]
    pub grid: Vec<usize>,
    /// Pole of point weights as X,Y,Z.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, default_value = "0,0,0")]
    pub origin: Point,
    /// Relative tolerance on the bound (default 0.1 below 64³, 0.05 from 64³).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Iteration cap of the minimization.
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Cube,
    Simplex,
    Prism,
    Cylinder,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub shape: Shape,
    /// Half edge length of the cube.
    #[arg(long, default_value_t = 1.0)]
    pub half: f64,
    /// Seed of the random simplex.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sides of a prism or cylinder polytope.
    #[arg(long, default_value_t = 6)]
    pub sides: usize,
    /// Circumradius of the prism base.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Prism height; the base sits at x3 = 0.
    #[arg(long, default_value_t = 1.0)]
    pub height: f64,
    /// Approximation parameter of the cylinder polytope.
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [a, b, c] if parts.iter().all(|v| v.is_finite()) => Ok(Point::new(*a, *b, *c)),
        [_, _, _] => Err("coordinates must be finite".into()),
        _ => Err(format!("expected X,Y,Z, got {} values", parts.len())),
    }
}
