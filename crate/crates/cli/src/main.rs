//! `slopecover` command-line tool.
//!
//! Exit codes: 0 success, 2 invalid flags or config, 3 I/O or input-file
//! error, 4 terrain generation or benchmark failure, 5 disconnected terrain,
//! 6 path does not match terrain.

mod config;
mod render;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slopecover::bench::{self, BenchConfig, BenchError};
use slopecover::coverage::{circumnavigate, path_cost, CoveragePath, PathError};
use slopecover::graph::{average_slope, build_graph, GraphError};
use slopecover::spanning::{classical_spanning_tree, minimum_spanning_tree, tree_weight};
use slopecover::terrain::{
    aggregate, generate_terrain, load_height_grid, TerrainError, TerrainGenSpec,
};
use slopecover::{HeightGrid, WeightSpec};

use crate::config::BenchSettings;
use crate::render::{render_svg, RenderOptions};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_GENERATION: u8 = 4;
const EXIT_DISCONNECTED: u8 = 5;
const EXIT_MISMATCH: u8 = 6;

#[derive(Parser)]
#[command(
    name = "slopecover",
    version,
    about = "Slope-aware spanning-tree coverage planning"
)]
#[command(
    after_help = "Exit codes: 2 invalid flags/config, 3 I/O or input file error, \
4 generation failure, 5 disconnected terrain, 6 path/terrain mismatch."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random terrain file.
    GenTerrain(GenArgs),
    /// Plan a coverage route over a terrain file.
    Plan(PlanArgs),
    /// Compare MST and classical trees over random terrains, as CSV.
    Bench(BenchArgs),
    /// Render a terrain and route as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of fine-cell rows (even).
    #[arg(long)]
    rows: usize,
    /// Number of fine-cell columns (even).
    #[arg(long)]
    cols: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of rectangular obstacle patches.
    #[arg(long, default_value_t = 0)]
    obstacles: usize,
    /// Target average slope in [0, 1]; 0 gives flat terrain.
    #[arg(long, default_value_t = 0.3)]
    roughness: f64,
    /// Distance between adjacent fine-cell centers, in meters.
    #[arg(long, default_value_t = 1.0)]
    spacing: f64,
    /// Output terrain file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    /// Every edge costs 1.
    Unit,
    /// 3D distance between cell centers.
    Pythagoras,
    /// 3D distance times (1 + slope).
    Penalty,
}

impl From<WeightArg> for WeightSpec {
    fn from(w: WeightArg) -> Self {
        match w {
            WeightArg::Unit => WeightSpec::Unit,
            WeightArg::Pythagoras => WeightSpec::Pythagoras,
            WeightArg::Penalty => WeightSpec::SlopePenalty,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Minimum spanning tree under the chosen weights.
    Mst,
    /// Weight-blind depth-first spanning tree.
    Classical,
}

#[derive(Args)]
struct PlanArgs {
    /// Terrain file.
    #[arg(long)]
    terrain: PathBuf,
    /// Edge-weight function.
    #[arg(long, value_enum, default_value = "pythagoras")]
    weight: WeightArg,
    /// Spanning-tree method.
    #[arg(long, value_enum, default_value = "mst")]
    method: Method,
    /// Output path file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// `key = value` config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of terrains [default: 15].
    #[arg(long)]
    terrains: Option<usize>,
    /// Fine-cell rows per terrain [default: 250].
    #[arg(long)]
    rows: Option<usize>,
    /// Fine-cell columns per terrain [default: 250].
    #[arg(long)]
    cols: Option<usize>,
    /// Maximum obstacle patches per terrain [default: 30].
    #[arg(long)]
    obstacles: Option<usize>,
    /// Master seed for per-terrain seeds [default: 42].
    #[arg(long)]
    seed: Option<u64>,
    /// Weight functions, comma separated [default: pythagoras,penalty].
    #[arg(long, value_enum, value_delimiter = ',')]
    weights: Option<Vec<WeightArg>>,
    /// Roughness of the smoothest terrain [default: 0.05].
    #[arg(long)]
    min_roughness: Option<f64>,
    /// Roughness of the roughest terrain [default: 0.5].
    #[arg(long)]
    max_roughness: Option<f64>,
    /// Fine-cell spacing in meters [default: 1].
    #[arg(long)]
    spacing: Option<f64>,
    /// Output CSV file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Terrain file.
    #[arg(long)]
    terrain: PathBuf,
    /// Path file written by `plan`.
    #[arg(long)]
    path: PathBuf,
    /// Output SVG file.
    #[arg(short, long)]
    output: PathBuf,
    /// Overlay the spanning-tree edges.
    #[arg(long)]
    show_tree: bool,
    /// Pixel size of one fine cell.
    #[arg(long, default_value_t = 8)]
    cell_size: u32,
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Command::GenTerrain(args) => gen_terrain(args),
        Command::Plan(args) => plan(args),
        Command::Bench(args) => run_bench(args),
        Command::Render(args) => render(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn load_terrain(path: &Path) -> Result<HeightGrid, CliError> {
    load_height_grid(path).map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn gen_terrain(args: GenArgs) -> Result<(), CliError> {
    let spec = TerrainGenSpec {
        rows: args.rows,
        cols: args.cols,
        seed: args.seed,
        max_obstacles: args.obstacles,
        roughness: args.roughness,
        spacing: args.spacing,
    };
    let grid: HeightGrid = generate_terrain(&spec).map_err(|e| match e {
        TerrainError::InvalidSpec(_) => CliError::new(EXIT_USAGE, e.to_string()),
        other => CliError::new(EXIT_GENERATION, other.to_string()),
    })?;
    write_file(&args.output, &grid.to_text())
}

fn plan(args: PlanArgs) -> Result<(), CliError> {
    let spec = WeightSpec::from(args.weight);
    let grid = load_terrain(&args.terrain)?;
    let mega = aggregate(&grid);
    let graph = build_graph(&mega, spec).map_err(|e| match e {
        GraphError::Disconnected { .. } | GraphError::NoFreeCells => {
            CliError::new(EXIT_DISCONNECTED, e.to_string())
        }
        GraphError::NoEdges => CliError::new(EXIT_IO, e.to_string()),
    })?;
    let tree = match args.method {
        Method::Mst => minimum_spanning_tree(&graph),
        Method::Classical => classical_spanning_tree(&graph),
    };
    let path = circumnavigate(&tree);
    write_file(&args.output, &path.to_text())?;

    let slope = average_slope(&mega).unwrap_or(f64::NAN);
    let mut out = std::io::stdout().lock();
    let report = format!(
        "method={}\nweight={spec}\nfree_mega_cells={}\nsacrificed_cells={}\navg_slope={slope:.6}\ntree_weight={:.6}\npath_length={}\npath_cost={:.6}\n",
        match args.method {
            Method::Mst => "mst",
            Method::Classical => "classical",
        },
        graph.node_count(),
        path.sacrificed,
        tree_weight(&tree, spec),
        path.len(),
        path_cost(&path, &grid, spec),
    );
    out.write_all(report.as_bytes())
        .map_err(|e| CliError::new(EXIT_IO, format!("stdout: {e}")))
}

fn bench_config(args: &BenchArgs) -> Result<BenchConfig, CliError> {
    let defaults = BenchSettings {
        terrain_count: Some(15),
        rows: Some(250),
        cols: Some(250),
        max_obstacles: Some(30),
        seed: Some(42),
        weight_specs: Some(vec![WeightSpec::Pythagoras, WeightSpec::SlopePenalty]),
        roughness_min: Some(0.05),
        roughness_max: Some(0.5),
        spacing: Some(1.0),
        ..Default::default()
    };
    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::new(EXIT_IO, format!("cannot read {}: {e}", path.display()))
            })?;
            BenchSettings::parse(&text)
                .map_err(|e| CliError::new(EXIT_USAGE, format!("{}: {e}", path.display())))?
        }
        None => BenchSettings::default(),
    };
    let flags = BenchSettings {
        terrain_count: args.terrains,
        rows: args.rows,
        cols: args.cols,
        max_obstacles: args.obstacles,
        seed: args.seed,
        weight_specs: args
            .weights
            .as_ref()
            .map(|w| w.iter().map(|&x| WeightSpec::from(x)).collect()),
        roughness_min: args.min_roughness,
        roughness_max: args.max_roughness,
        spacing: args.spacing,
        ..Default::default()
    };
    let explicit_file = file.clone();
    let s = defaults.overlay(file).overlay(flags);

    let terrain_count = match (
        &explicit_file.seeds,
        args.terrains,
        explicit_file.terrain_count,
    ) {
        (Some(seeds), None, None) => seeds.len(),
        _ => s.terrain_count.unwrap_or(15),
    };
    let seeds = s
        .seeds
        .clone()
        .unwrap_or_else(|| bench::derive_seeds(s.seed.unwrap_or(42), terrain_count));
    let roughness_schedule = s.roughness_schedule.clone().unwrap_or_else(|| {
        bench::linear_schedule(
            terrain_count,
            s.roughness_min.unwrap_or(0.05),
            s.roughness_max.unwrap_or(0.5),
        )
    });
    let cfg = BenchConfig {
        terrain_count,
        rows: s.rows.unwrap_or(250),
        cols: s.cols.unwrap_or(250),
        max_obstacles: s.max_obstacles.unwrap_or(30),
        seeds,
        weight_specs: s.weight_specs.clone().unwrap_or_default(),
        roughness_schedule,
        spacing: s.spacing.unwrap_or(1.0),
    };
    cfg.validate()
        .map_err(|e| CliError::new(EXIT_USAGE, e.to_string()))?;
    Ok(cfg)
}

fn run_bench(args: BenchArgs) -> Result<(), CliError> {
    let cfg = bench_config(&args)?;
    let records =
        bench::run_benchmark(&cfg).map_err(|e| CliError::new(EXIT_GENERATION, e.to_string()))?;
    let summary = match bench::trend_statistics(&records) {
        Ok(s) => Some(s),
        Err(BenchError::InsufficientData { .. }) => None,
        Err(e) => return Err(CliError::new(EXIT_GENERATION, e.to_string())),
    };
    let csv = bench::to_csv(&records, summary.as_ref());
    match &args.output {
        Some(path) => write_file(path, &csv),
        None => std::io::stdout()
            .lock()
            .write_all(csv.as_bytes())
            .map_err(|e| CliError::new(EXIT_IO, format!("stdout: {e}"))),
    }
}

fn render(args: RenderArgs) -> Result<(), CliError> {
    let grid = load_terrain(&args.terrain)?;
    let path = CoveragePath::load(&args.path)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", args.path.display())))?;
    path.check_against(&grid).map_err(|e| match e {
        PathError::Mismatch(_) => CliError::new(EXIT_MISMATCH, e.to_string()),
        other => CliError::new(EXIT_IO, other.to_string()),
    })?;
    let svg = render_svg(
        &grid,
        &path,
        &RenderOptions {
            cell_size: args.cell_size,
            show_tree: args.show_tree,
        },
    );
    write_file(&args.output, &svg)
}
