mod commands;
mod shape;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status for a verification run that found mismatches.
const EXIT_MISMATCH: u8 = 1;
/// Exit status for usage, parse and validation errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "convloc", version, about = "Point location in convex polygons and polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated polygon (text) or icosphere (OBJ).
    Gen(GenArgs),
    /// Classify every point of a points file against a shape.
    Locate(LocateArgs),
    /// Cross-check all methods against the linear oracle.
    Verify(VerifyArgs),
    /// Time index builds and queries; prints CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Linear,
    Wedge,
    SlabsSorted,
    SlabsUniform,
    Polar,
    Cubemap,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Linear => "linear",
            Method::Wedge => "wedge",
            Method::SlabsSorted => "slabs-sorted",
            Method::SlabsUniform => "slabs-uniform",
            Method::Polar => "polar",
            Method::Cubemap => "cubemap",
        }
    }

    pub const ALL_2D: [Method; 5] = [
        Method::Linear,
        Method::Wedge,
        Method::SlabsSorted,
        Method::SlabsUniform,
        Method::Polar,
    ];
    pub const ALL_3D: [Method; 2] = [Method::Linear, Method::Cubemap];
}

/// Index size overrides shared by the commands that build indexes.
#[derive(Args, Debug, Clone, Copy, Default)]
pub struct IndexArgs {
    /// Slab count for the polar and uniform-slab indexes.
    #[arg(long)]
    n_slabs: Option<usize>,
    /// Grid resolution per cube face for the cube-map index.
    #[arg(long)]
    resolution: Option<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Ellipse polygon with `-n` vertices.
    #[arg(long, conflicts_with = "icosphere", required_unless_present = "icosphere")]
    polygon: bool,
    /// Icosphere at `--level`; with `--seed`, under that seed's random affine map.
    #[arg(long)]
    icosphere: bool,
    #[arg(short = 'n', long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    level: u32,
    #[arg(long)]
    seed: Option<u64>,
    /// Ellipse semi-axes.
    #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [1.0, 1.0])]
    axes: Vec<f64>,
    /// Ellipse rotation in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    rotation: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LocateArgs {
    /// Polygon text file, or OBJ file (by `.obj` extension).
    shape: PathBuf,
    /// One point per line.
    points: PathBuf,
    /// Defaults to polar for polygons and cubemap for polyhedra.
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[command(flatten)]
    index: IndexArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Shape to check; the generated default corpus when absent.
    shape: Option<PathBuf>,
    /// Query points for `shape`; generated when absent.
    #[arg(long, requires = "shape")]
    points: Option<PathBuf>,
    /// Generated query points per shape.
    #[arg(short = 'm', long, default_value_t = 1000)]
    m: usize,
    /// Shapes per size in the default corpus.
    #[arg(long, default_value_t = 10)]
    shapes: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    index: IndexArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Methods to time, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    method: Vec<Method>,
    /// Polygon vertex counts (2D run).
    #[arg(short = 'n', long, value_delimiter = ',', conflicts_with = "level")]
    n: Vec<usize>,
    /// Icosphere levels (3D run).
    #[arg(long, value_delimiter = ',')]
    level: Vec<u32>,
    /// Query counts.
    #[arg(short = 'm', long, value_delimiter = ',', default_value = "100000")]
    m: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    index: IndexArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Locate(a) => commands::locate(a),
        Command::Verify(a) => commands::verify(a),
        Command::Bench(a) => commands::bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
