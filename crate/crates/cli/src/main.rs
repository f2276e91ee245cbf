//! `mlc`: solve, benchmark and inspect TSP instances with the two-phase
//! constructive heuristic and its baselines.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mlc_core::candidates::{DEFAULT_K, DEFAULT_M};
use mlc_core::cnn::DEFAULT_THRESHOLD;
use mlc_core::solve::Policy;

#[derive(Debug, Parser)]
#[command(name = "mlc", version, about = "Two-phase constructive heuristics for the symmetric TSP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build one tour with one policy and write it as a TSPLIB tour file.
    Solve(SolveArgs),
    /// Run several policies over every instance of a manifest.
    Benchmark(BenchmarkArgs),
    /// Per-position TPR/FPR/PLR of constructed tours against optimal tours.
    Stats(StatsArgs),
    /// Generate random unit-square instances, optionally with tours.
    Gen(GenArgs),
    /// Render the context image of one candidate edge.
    Render(RenderArgs),
    /// Write the shared rendering fixture set used to cross-check training code.
    Fixtures(FixturesArgs),
    /// Write a randomly initialised network in the MLCW weight format.
    InitWeights(InitWeightsArgs),
}

/// Parameters of the two-phase constructor.
#[derive(Debug, Clone, Args)]
struct ConstructArgs {
    /// Candidate list length.
    #[arg(long, default_value_t = DEFAULT_K)]
    k: usize,
    /// Entries per candidate list copied into the promising list.
    #[arg(long, default_value_t = DEFAULT_M)]
    m: usize,
    /// Minimum optimal-edge probability for the learned policy to accept.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Seed of the first empirical run.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeded runs behind the ae and be policies.
    #[arg(long, default_value_t = 20)]
    runs: usize,
    /// MLCW weight file for the ml-c policy.
    #[arg(long, env = "MLC_WEIGHTS")]
    weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// TSPLIB instance file.
    #[arg(long)]
    instance: PathBuf,
    /// One of mf, cw, nn, f, s, y, ae, be, ml-c, ml-sc.
    #[arg(long, default_value = "cw")]
    policy: Policy,
    #[command(flatten)]
    construct: ConstructArgs,
    /// Optimal tour, required by ml-sc.
    #[arg(long)]
    opt_tour: Option<PathBuf>,
    /// Known optimum for the gap line; looked up in --optima otherwise.
    #[arg(long)]
    optimum: Option<f64>,
    /// JSON-lines optima table; defaults to optima.jsonl beside the instance.
    #[arg(long)]
    optima: Option<PathBuf>,
    /// Start vertex of the nearest-neighbor policy.
    #[arg(long, default_value_t = 0)]
    nn_start: usize,
    /// Output tour file; defaults to <name>.<policy>.tour.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    /// Manifest listing instances, optima and optimal tours.
    #[arg(long, env = "MLC_MANIFEST")]
    manifest: PathBuf,
    /// Comma-separated policies.
    #[arg(long, default_value = "mf,cw,f,s,y,ae,be,ml-sc")]
    policies: String,
    #[command(flatten)]
    construct: ConstructArgs,
    /// Worker threads across instances; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Gap matrix CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Wall-clock matrix CSV.
    #[arg(long)]
    times: Option<PathBuf>,
    /// Full report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// Manifest whose instances have optimal tours.
    #[arg(long, env = "MLC_MANIFEST")]
    manifest: PathBuf,
    /// Comma-separated policies whose tours act as predictors.
    #[arg(long, default_value = "mf,cw")]
    policies: String,
    #[command(flatten)]
    construct: ConstructArgs,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Number of instances.
    #[arg(long)]
    count: usize,
    /// Fixed instance size; overrides --n-min and --n-max.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 50)]
    n_min: usize,
    #[arg(long, default_value_t = 100)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attach proven optimal tours; every instance must be small enough for Held-Karp.
    #[arg(long, conflicts_with = "tours")]
    exact: bool,
    /// Attach optimal tours where feasible and 2-opt reference tours beyond.
    #[arg(long)]
    tours: bool,
    /// Output directory.
    #[arg(long, default_value = "dataset")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImageFormat {
    /// Raw little-endian float32, rows then columns then channels.
    Blob,
    /// Binary PPM.
    Ppm,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Candidate edge as two 0-based vertex indices, e.g. 3,7.
    #[arg(long, value_parser = parse_edge)]
    edge: (usize, usize),
    #[arg(long, default_value_t = DEFAULT_K)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_M)]
    m: usize,
    /// Fill the third channel with the optimal edges that precede the
    /// candidate in the promising list.
    #[arg(long)]
    opt_tour: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ImageFormat::Blob)]
    format: ImageFormat,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct FixturesArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "fixtures")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct InitWeightsArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Channels after the stem convolution.
    #[arg(long, default_value_t = 64)]
    stem_width: usize,
    /// Free-form text stored in the meta record.
    #[arg(long)]
    meta: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two vertices separated by a comma")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Benchmark(a) => commands::benchmark(a),
        Command::Stats(a) => commands::stats(a),
        Command::Gen(a) => commands::generate(a),
        Command::Render(a) => commands::render(a),
        Command::Fixtures(a) => commands::fixtures(a),
        Command::InitWeights(a) => commands::init_weights(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
