//! Command-line front end: `solve` a DIMACS graph, `generate` random
//! 3-colorable instances, `bench` an SR/AES sweep.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use firefly_coloring::config;
use firefly_coloring::firefly::{self, AttractionSource, FfaParams};
use firefly_coloring::generator::{self, GenSpec, Variant};
use firefly_coloring::graph::{parse_dimacs, write_dimacs_with_comments};
use firefly_coloring::harness;

#[derive(Parser)]
#[command(name = "firefly-coloring", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the solver once on a DIMACS .col file.
    Solve(SolveArgs),
    /// Generate a random 3-colorable graph as DIMACS .col.
    Generate(GenerateArgs),
    /// Run an experiment sweep and write an SR/AES CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// DIMACS .col input file.
    graph: Option<PathBuf>,

    /// key=value parameter file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Print the effective parameters (defaults plus overrides) and exit.
    #[arg(long)]
    show_config: bool,

    /// Population size.
    #[arg(long)]
    np: Option<usize>,
    /// Lower weight bound.
    #[arg(long)]
    lb: Option<f64>,
    /// Upper weight bound.
    #[arg(long)]
    ub: Option<f64>,
    /// Randomization weight.
    #[arg(long)]
    alpha: Option<f64>,
    /// Attractiveness at distance zero.
    #[arg(long)]
    beta0: Option<f64>,
    /// Light absorption coefficient.
    #[arg(long)]
    gamma: Option<f64>,
    /// Evaluation budget.
    #[arg(long)]
    max_fes: Option<u32>,
    /// Attractor positions: current | sorted.
    #[arg(long)]
    attraction_source: Option<String>,
    /// Divide squared distances by the vertex count.
    #[arg(long)]
    normalized_distance: bool,
    /// Run seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Graph variant: uniform | equipartite | flat.
    #[arg(long)]
    variant: String,
    /// Vertex count.
    #[arg(long)]
    n: usize,
    /// Edge probability.
    #[arg(long)]
    p: f64,
    /// Generator seed.
    #[arg(long)]
    q: u64,
    /// Output .col path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Experiment spec file (key=value).
    #[arg(long)]
    spec: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; 0 picks a default. Any value yields the same CSV.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Solve(args) => solve(args),
        Command::Generate(args) => generate(args),
        Command::Bench(args) => bench(args),
    }
}

fn effective_params(args: &SolveArgs) -> Result<FfaParams<f64>> {
    let mut params = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            config::parse_params(&text)?
        }
        None => FfaParams::default(),
    };
    if let Some(np) = args.np {
        params.population = np;
    }
    if let Some(lb) = args.lb {
        params.lower = lb;
    }
    if let Some(ub) = args.ub {
        params.upper = ub;
    }
    if let Some(alpha) = args.alpha {
        params.alpha = alpha;
    }
    if let Some(beta0) = args.beta0 {
        params.beta0 = beta0;
    }
    if let Some(gamma) = args.gamma {
        params.gamma = gamma;
    }
    if let Some(max_fes) = args.max_fes {
        params.max_fes = max_fes;
    }
    if let Some(source) = &args.attraction_source {
        params.attraction_source = match source.as_str() {
            "current" => AttractionSource::CurrentPopulation,
            "sorted" => AttractionSource::SortedCopy,
            other => bail!("attraction source must be current or sorted, got {other}"),
        };
    }
    if args.normalized_distance {
        params.normalized_distance = true;
    }
    if let Some(seed) = args.seed {
        params.seed = seed;
    }
    Ok(params)
}

fn solve(args: SolveArgs) -> Result<()> {
    let params = effective_params(&args)?;
    if args.show_config {
        print!("{}", config::show_params(&params));
        return Ok(());
    }
    let path = args.graph.as_ref().context("missing graph file argument")?;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_dimacs(&text)?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }

    let result = firefly::run(&parsed.graph, &params)?;
    if result.success {
        println!("proper coloring found after {} evaluations", result.evaluations);
    } else {
        println!(
            "no proper coloring within {} evaluations; best penalty {}",
            result.evaluations, result.best_penalty
        );
    }
    if let Some(coloring) = &result.best_coloring {
        println!("{coloring}");
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<()> {
    let variant: Variant = args.variant.parse()?;
    let spec = GenSpec { variant, n: args.n, p: args.p, q: args.q };
    let graph = generator::generate(&spec)?;
    let header = format!("variant={} n={} p={} q={}", variant, args.n, args.p, args.q);
    std::fs::write(&args.out, write_dimacs_with_comments(&graph, &[header]))
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {} ({} vertices, {} edges)", args.out.display(), args.n, graph.edge_count());
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.spec)
        .with_context(|| format!("reading {}", args.spec.display()))?;
    let spec = config::parse_experiment(&text)?;
    let table = harness::run_experiment(&spec, args.jobs)?;
    harness::write_csv(&table, &args.out)?;
    println!(
        "wrote {} ({} rows from {} runs)",
        args.out.display(),
        table.rows.len(),
        table.records.len()
    );
    Ok(())
}
