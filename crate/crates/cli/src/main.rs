//! `fuzzycom`: generate fuzzy-attributed benchmarks, detect communities,
//! score partitions, and run replicated experiment grids.
//!
//! Exit codes: 0 on success, 1 on runtime errors (I/O, parsing, failed
//! detection), 2 on usage and configuration errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fuzzycom::benchgen::{generate_instance, write_bundle, BenchmarkSpec};
use fuzzycom::experiment::{read_config, run_experiment, write_results_csv};
use fuzzycom::io;
use fuzzycom::louvain::{duo_louvain, modularity};
use fuzzycom::metrics::nmi;
use fuzzycom::synergy::{aggregate_matrices, combine, synergy_matrix_additive};
use fuzzycom::{Aggregator, Error, Result, WeightedGraph};

const FORMATS_HELP: &str = "\
File formats:

  Edge list (detect --graph, gen writes adjacency.edges). Whitespace
  separated `u v [w]` with 0-based ids, weight defaults to 1, `#` starts a
  comment, and an optional `# nodes N` comment pins the node count:
      # nodes 4
      0 1
      2 3 0.5

  Partition (nmi inputs, detect --out, gen writes truth_*.part). One
  `node community` pair per line, nodes covering 0..n-1:
      0 0
      1 0
      2 1

  Attribute values (detect --vectors, gen writes vectors.csv). One
  comma-separated row of n crisp values per characteristic, no header:
      9,9.5,10,1
      1,0.5,9,9

  Fuzzy vector (detect --vectors). Breakpoint table with a header, one
  trapezoid per node:
      node,a,b,c,d
      0,0,0,10,25
      1,60,70,80,100

  or a label dictionary followed by node assignments:
      label,a,b,c,d
      VL,0,0,10,25
      node,label
      0,VL

  Experiment config (experiment --config). JSON object with `model`,
  `networks`, `cases`, `seed`, and optional `replicates` (default 100),
  `gamma` (default 0), `output` (default results.csv):
      {\"model\": 1, \"networks\": [1, 5, 9], \"cases\": [1, 9], \"seed\": 7}
";

#[derive(Parser)]
#[command(
    name = "fuzzycom",
    version,
    about = "Community detection on graphs with fuzzy node attributes",
    after_long_help = FORMATS_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark instance bundle into a directory
    Gen(GenArgs),
    /// Detect communities on an edge list plus attribute vectors
    Detect(DetectArgs),
    /// Print the normalized mutual information of two partition files
    Nmi(NmiArgs),
    /// Run a replicated benchmark grid from a JSON config
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Benchmark model preset (1-4)
    #[arg(long)]
    model: u8,
    /// Network column (1-9) selecting the edge probabilities
    #[arg(long)]
    network: u8,
    /// Case column (1-9) selecting the sampler shapes
    #[arg(long)]
    case: u8,
    /// Generation seed
    #[arg(long)]
    seed: u64,
    /// Output directory for the bundle
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DetectArgs {
    /// Edge list of the crisp graph A
    #[arg(long)]
    graph: PathBuf,
    /// Attribute vectors: numeric rows or a fuzzy trapezoid CSV.
    /// Required unless --gamma is 1
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Blend weight in M = gamma*A + (1-gamma)*F
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// Pairwise Shapley-difference aggregator (min, max, mean)
    #[arg(long, default_value = "min")]
    phi: Aggregator,
    /// Across-characteristics aggregator (min, max, mean)
    #[arg(long = "Phi", default_value = "max")]
    cap_phi: Aggregator,
    /// Seed for the sweep order of the detector
    #[arg(long)]
    seed: u64,
    /// Output partition file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct NmiArgs {
    /// First partition file
    first: PathBuf,
    /// Second partition file
    second: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment config
    #[arg(long)]
    config: PathBuf,
    /// Override the configured replicate count
    #[arg(long)]
    replicates: Option<usize>,
    /// Override the configured master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the configured gamma
    #[arg(long)]
    gamma: Option<f64>,
    /// Override the configured output CSV path
    #[arg(long)]
    output: Option<String>,
    /// Worker threads for replicates (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Detect(args) => run_detect(args),
        Command::Nmi(args) => run_nmi(args),
        Command::Experiment(args) => run_experiment_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}

fn run_gen(args: GenArgs) -> Result<()> {
    let spec = BenchmarkSpec::from_ids(args.model, args.network, args.case, args.seed)?;
    let instance = generate_instance(&spec)?;
    write_bundle(&args.out, &spec, &instance)?;
    println!(
        "wrote bundle to {} (n={}, {} adjacency blocks, {} attribute blocks)",
        args.out.display(),
        spec.n,
        spec.adjacency_sizes.len(),
        spec.attribute_sizes.len()
    );
    Ok(())
}

/// A fuzzy vectors file starts with one of the two trapezoid headers; bare
/// numeric rows have no header.
fn vectors_file_is_fuzzy(path: &Path) -> Result<bool> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    Ok(first.starts_with("node,") || first.starts_with("label,"))
}

fn read_attribute_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    if vectors_file_is_fuzzy(path)? {
        let vector = io::read_fuzzy_csv(path)?;
        Ok(vec![vector.defuzzify(fuzzycom::Defuzzifier::Centroid)?])
    } else {
        io::read_vectors_csv(path)
    }
}

fn run_detect(args: DetectArgs) -> Result<()> {
    let graph = io::read_edge_list(&args.graph)?;
    let m: WeightedGraph = if args.gamma == 1.0 {
        if args.vectors.is_some() {
            eprintln!("warning: gamma=1 uses the graph alone; ignoring --vectors");
        }
        graph.clone()
    } else {
        let vectors_path = args.vectors.as_deref().ok_or_else(|| {
            Error::Config("detect needs --vectors unless --gamma is 1".to_string())
        })?;
        let rows = read_attribute_rows(vectors_path)?;
        let mats = rows
            .iter()
            .map(|row| synergy_matrix_additive(row, args.phi))
            .collect::<Result<Vec<_>>>()?;
        let f = aggregate_matrices(&mats, args.cap_phi)?;
        combine(&graph, &f, args.gamma)?
    };
    let partition = duo_louvain(&graph, &m, args.seed)?;
    let q = modularity(&m, &partition)?;
    io::write_partition(&args.out, &partition)?;
    println!("communities={} Q={q:.6}", partition.num_communities());
    Ok(())
}

fn run_nmi(args: NmiArgs) -> Result<()> {
    let first = io::read_partition(&args.first)?;
    let second = io::read_partition(&args.second)?;
    println!("{:.6}", nmi(&first, &second)?);
    Ok(())
}

fn run_experiment_cmd(args: ExperimentArgs) -> Result<()> {
    let mut cfg = read_config(&args.config)?;
    if let Some(replicates) = args.replicates {
        cfg.replicates = replicates;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(gamma) = args.gamma {
        cfg.gamma = gamma;
    }
    if let Some(output) = args.output {
        cfg.output = output;
    }
    cfg.validate()?;
    let results = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("cannot build a {jobs}-thread pool: {e}")))?
            .install(|| run_experiment(&cfg)),
        None => run_experiment(&cfg),
    }?;
    for cell in &results {
        println!(
            "network {} case {}: mean NMI {:.6} (std {:.6}, {} replicates, {:.3}s)",
            cell.network, cell.case, cell.mean_nmi, cell.std_nmi, cell.replicates, cell.seconds
        );
    }
    write_results_csv(Path::new(&cfg.output), &results)?;
    println!("wrote {}", cfg.output);
    Ok(())
}
