//! Command-line front end: solve one instance, generate random graphs,
//! run the exact small-graph search, or run a benchmark suite.
//!
//! Exit codes: 0 success, 1 invalid input, 2 capacity exceeded, 3 internal
//! verification failure.

use clap::{Args, Parser, Subcommand};
use dmis::io::{self, Format};
use dmis::pipeline::{self, PipelineConfig, ProblemKind, Suite};
use dmis::{gen, oracle, Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "dmis",
    version,
    about = "Heuristic maximum-independent-set, clique, and vertex-cover solver"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance and write a JSON report.
    Solve(SolveArgs),
    /// Generate a seeded random graph.
    Gen(GenArgs),
    /// Exact maximum independent set by branch and bound (n ≤ 26).
    Oracle(OracleArgs),
    /// Run a named benchmark suite and write a results table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Problem to solve: mis, mc, or mvc.
    #[arg(long)]
    problem: ProblemKind,
    #[arg(long)]
    input: PathBuf,
    /// Input format (edgelist or dimacs); detected from the file when omitted.
    #[arg(long)]
    format: Option<Format>,
    /// Where the JSON report goes.
    #[arg(long)]
    output: PathBuf,
    /// Extraction threshold θ_v ≥ alpha.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Optimizer learning rate.
    #[arg(long, default_value_t = 0.1)]
    lr: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Community resolution; defaults to 1.3 on sparse graphs, 0.8 otherwise.
    #[arg(long)]
    resolution: Option<f64>,
    /// Skip LP kernelization.
    #[arg(long)]
    no_lp: bool,
    /// Solve the graph whole instead of per community.
    #[arg(long)]
    no_communities: bool,
    /// Skip the iterated-restart improvement phase.
    #[arg(long)]
    no_improve: bool,
    /// Starting removal size for the improvement phase.
    #[arg(long, default_value_t = 5)]
    lambda0: usize,
    /// Improvement-phase time budget in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Worker threads for per-community solves (ignored in builds without
    /// the parallel feature).
    #[arg(long)]
    workers: Option<usize>,
    /// Solve only the largest connected component.
    #[arg(long)]
    lcc: bool,
}

#[derive(Args)]
struct GenArgs {
    /// er, ba, hk, or sbm.
    #[arg(long)]
    model: String,
    /// Vertex count (for sbm: use --blocks instead).
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Edge probability (er) or intra-block probability (sbm).
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Edges each new vertex attaches with (ba, hk).
    #[arg(long, default_value_t = 2)]
    m_attach: usize,
    /// Triangle-closure probability (hk).
    #[arg(long, default_value_t = 0.5)]
    pt: f64,
    /// Comma-separated block sizes (sbm).
    #[arg(long, default_value = "50,50,50,50,50")]
    blocks: String,
    /// Inter-block probability (sbm).
    #[arg(long, default_value_t = 0.05)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; .col/.dimacs/.clq select DIMACS, anything else edge list.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    /// Input format; detected from the file when omitted.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args)]
struct BenchArgs {
    /// synthetic, snap, or citation.
    #[arg(long)]
    suite: Suite,
    /// Number of solver seeds (0..K) per instance.
    #[arg(long, default_value_t = 2)]
    seeds: u64,
    /// Results table; .json selects JSON, anything else CSV.
    #[arg(long)]
    output: PathBuf,
    /// Directory holding downloaded datasets.
    #[arg(long, default_value = "data")]
    data_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (ignored in builds without the parallel feature).
    #[arg(long)]
    workers: Option<usize>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; they are not failures
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Oracle(args) => cmd_oracle(args),
        Cmd::Bench(args) => cmd_bench(args),
    }
}

#[cfg(feature = "parallel")]
fn init_workers(workers: Option<usize>) -> Result<()> {
    if let Some(k) = workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn init_workers(_workers: Option<usize>) -> Result<()> {
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    init_workers(args.workers)?;
    let loaded = io::load_graph(&args.input, args.format)?;
    let g = if args.lcc { loaded.largest_connected_component().graph } else { loaded };

    let mut cfg = PipelineConfig::default();
    cfg.problem = args.problem;
    cfg.train.alpha = args.alpha;
    cfg.train.learning_rate = args.lr;
    cfg.train.seed = args.seed;
    cfg.resolution = args.resolution;
    cfg.use_lp = !args.no_lp;
    cfg.use_communities = !args.no_communities;
    cfg.use_improve = !args.no_improve;
    cfg.improve.lambda0 = args.lambda0;
    cfg.improve.time_limit = args.time_limit.map(Duration::from_secs_f64);

    let name = args.input.display().to_string();
    let (_, report) = pipeline::solve(&g, &name, &cfg)?;

    let file = std::fs::File::create(&args.output)?;
    let mut w = std::io::BufWriter::new(file);
    pipeline::write_report(&mut w, &report)?;
    w.flush()?;
    println!(
        "{} on {} (n={}, m={}): size {} in {:.2}s -> {}",
        report.problem,
        name,
        report.n,
        report.m,
        report.size,
        report.wall_seconds,
        args.output.display()
    );
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let g = match args.model.as_str() {
        "er" => gen::erdos_renyi(args.n, args.p, &mut rng)?,
        "ba" => gen::barabasi_albert(args.n, args.m_attach, &mut rng)?,
        "hk" => gen::powerlaw_cluster(args.n, args.m_attach, args.pt, &mut rng)?,
        "sbm" => {
            let blocks = args
                .blocks
                .split(',')
                .map(|tok| {
                    tok.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidInput(format!("bad block size {tok:?} in --blocks"))
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            gen::stochastic_block(&blocks, args.p, args.q, &mut rng)?
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown model {other:?} (expected er, ba, hk, or sbm)"
            )))
        }
    };
    io::save_graph(&args.output, &g)?;
    println!(
        "{} graph: n={}, m={} -> {}",
        args.model,
        g.n(),
        g.m(),
        args.output.display()
    );
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let g = io::load_graph(&args.input, args.format)?;
    let res = oracle::exact_mis(&g)?;
    let witness: Vec<String> = res.witness.iter().map(|v| g.label(v)).collect();
    println!("size {}", res.size);
    println!("witness {}", witness.join(" "));
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    init_workers(args.workers)?;
    let mut cfg = PipelineConfig::default();
    cfg.train.seed = args.seed;
    let rows = pipeline::bench(args.suite, args.seeds, &cfg, &args.data_dir)?;

    let file = std::fs::File::create(&args.output)?;
    let mut w = std::io::BufWriter::new(file);
    if args.output.extension().and_then(|e| e.to_str()) == Some("json") {
        pipeline::write_bench_json(&mut w, &rows)?;
    } else {
        pipeline::write_bench_csv(&mut w, &rows)?;
    }
    w.flush()?;
    for r in &rows {
        println!(
            "{}: mean {:.1} best {} target {}{} {}",
            r.instance,
            r.mean_size,
            r.best_size,
            r.target,
            r.tolerance.map_or(String::from("+"), |t| format!("±{t}")),
            if r.within_target { "ok" } else if r.gating { "MISSED" } else { "(informational)" }
        );
    }
    println!("results -> {}", args.output.display());
    Ok(())
}
