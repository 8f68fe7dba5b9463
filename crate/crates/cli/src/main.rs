use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gsample::generators::{
    generate, GeneratorConfig, ModelParams, DEFAULT_FOREST_FIRE_BURN, DEFAULT_MM_EDGES_PER_NODE,
    DEFAULT_MM_PREFERENTIAL, DEFAULT_REWIRE, DEFAULT_RING_DEGREE,
};
use gsample::graph::{load_edge_list, write_edge_list, EdgeListSource, LoadedGraph};
use gsample::harness::{aggregate_files, run_experiment, ExperimentConfig, RunReport};
use gsample::properties::{LowDegreeRule, PathMode, DEFAULT_PATH_SOURCES, EXACT_PATH_THRESHOLD};
use gsample::samplers::{replay, SamplerParams};
use gsample::{
    compute_report, DistributionKind, FinalizeMode, Method, PropertyOptions, PropertyReport64, SamplerConfig,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gsample", version, about = "Traversal-based graph sampling and property estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph and write its edge list.
    Generate(GenerateArgs),
    /// Sample a graph and write the sample's edge list plus a JSON sidecar.
    Sample(SampleArgs),
    /// Compute the property report of a graph.
    Properties(PropertiesArgs),
    /// Run or re-aggregate benchmark sweeps.
    Bench {
        #[command(subcommand)]
        command: BenchCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Ff,
    Sw,
    Mm,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    nodes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Forest fire forward burning probability.
    #[arg(long)]
    burn: Option<f64>,
    /// Small world ring degree (even).
    #[arg(long)]
    ring_degree: Option<usize>,
    /// Small world rewiring probability.
    #[arg(long)]
    rewire: Option<f64>,
    /// Mixed model edges added per node.
    #[arg(long)]
    edges_per_node: Option<usize>,
    /// Mixed model share of degree-proportional endpoints.
    #[arg(long)]
    preferential: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fs,
    Xs,
    Rd,
    Ls,
    Hj,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Fs => Method::Fs,
            MethodArg::Xs => Method::Xs,
            MethodArg::Rd => Method::Rd,
            MethodArg::Ls => Method::Ls,
            MethodArg::Hj => Method::Hj,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Collected,
    Induced,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long)]
    phi: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "induced")]
    mode: ModeArg,
    /// Fix the first node (external id as written in the input).
    #[arg(long)]
    start: Option<u64>,
    /// FS walker count.
    #[arg(long)]
    walkers: Option<usize>,
    /// RD initial seed count.
    #[arg(long)]
    rd_seeds: Option<usize>,
    /// RD share of ranked neighbours promoted per step.
    #[arg(long)]
    rd_top: Option<f64>,
    /// HJ jump probability; estimated from the degree when absent.
    #[arg(long)]
    jump_probability: Option<f64>,
    /// HJ jump-list BFS depth.
    #[arg(long)]
    jump_depth: Option<usize>,
    /// HJ uniform probes for the degree estimate.
    #[arg(long)]
    degree_probes: Option<usize>,
    /// Record every traversal step in the sidecar and check it by replay.
    #[arg(long)]
    trace: bool,
    /// Sample edge list; the sidecar goes next to it with a `.json` suffix.
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Args)]
struct PropertiesArgs {
    #[arg(long, short)]
    input: PathBuf,
    /// All-pairs path lengths regardless of size.
    #[arg(long, conflicts_with = "path_sources")]
    exact_paths: bool,
    /// BFS sources for sampled path lengths.
    #[arg(long)]
    path_sources: Option<usize>,
    /// Seed for path-source selection and community detection.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exclude degree 0 and 1 nodes from average clustering.
    #[arg(long)]
    exclude_low_degree: bool,
    /// Directory for `<kind>.dist.csv` files.
    #[arg(long)]
    dist_dir: Option<PathBuf>,
    /// Report file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Run every cell of an experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// Overrides the config's output directory.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rebuild the tables from an existing raw.csv.
    Aggregate {
        #[arg(long)]
        raw: PathBuf,
        /// Defaults to the directory holding the raw file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args)?,
        Command::Sample(args) => cmd_sample(args)?,
        Command::Properties(args) => cmd_properties(args)?,
        Command::Bench { command: BenchCommand::Run { config, workers, output } } => {
            return cmd_bench_run(&config, workers, output);
        }
        Command::Bench { command: BenchCommand::Aggregate { raw, output } } => {
            let out = output.unwrap_or_else(|| raw.parent().unwrap_or(Path::new(".")).to_path_buf());
            let tables = aggregate_files(&raw, &out)?;
            eprintln!(
                "wrote {} point stats, {} rmse rows, {} jsd rows to {} ({} warnings)",
                tables.point_stats.len(),
                tables.rmse.len(),
                tables.jsd.len(),
                out.display(),
                tables.warnings
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(path: &Path) -> Result<LoadedGraph> {
    load_edge_list(&EdgeListSource::path(path)).with_context(|| format!("loading {}", path.display()))
}

fn cmd_generate(a: GenerateArgs) -> Result<()> {
    let params = match a.model {
        Model::Ff => ModelParams::ForestFire { forward_burn: a.burn.unwrap_or(DEFAULT_FOREST_FIRE_BURN) },
        Model::Sw => ModelParams::SmallWorld {
            ring_degree: a.ring_degree.unwrap_or(DEFAULT_RING_DEGREE),
            rewire: a.rewire.unwrap_or(DEFAULT_REWIRE),
        },
        Model::Mm => ModelParams::MixedModel {
            edges_per_node: a.edges_per_node.unwrap_or(DEFAULT_MM_EDGES_PER_NODE),
            preferential: a.preferential.unwrap_or(DEFAULT_MM_PREFERENTIAL),
        },
    };
    let g = generate(&GeneratorConfig::new(params, a.nodes, a.seed))?;
    write_edge_list(&g, writer(a.output.as_deref())?)?;
    Ok(())
}

fn cmd_sample(a: SampleArgs) -> Result<()> {
    let loaded = load(&a.input)?;
    let g = &loaded.graph;
    let mut params = SamplerParams::default();
    if let Some(v) = a.walkers {
        params.walkers = v;
    }
    if let Some(v) = a.rd_seeds {
        params.rd_seeds = v;
    }
    if let Some(v) = a.rd_top {
        params.rd_top_fraction = v;
    }
    if let Some(v) = a.degree_probes {
        params.degree_probes = v;
    }
    if let Some(v) = a.jump_depth {
        params.jump_depth = v;
    }
    params.jump_probability = a.jump_probability;
    let mode = match a.mode {
        ModeArg::Collected => FinalizeMode::Collected,
        ModeArg::Induced => FinalizeMode::Induced,
    };
    let mut cfg = SamplerConfig::new(a.method.into(), a.phi, a.seed).with_mode(mode).with_params(params);
    if let Some(ext) = a.start {
        let Ok(v) = loaded.original_ids.binary_search(&ext) else {
            bail!("start node {ext} does not occur in {}", a.input.display());
        };
        cfg = cfg.with_start(v);
    }
    if a.trace {
        cfg = cfg.traced();
    }
    let s = gsample::sample(g, &cfg)?;
    if a.trace {
        replay(g, &s).context("step log failed replay")?;
    }

    let ids = &loaded.original_ids;
    let mut out = writer(Some(&a.output))?;
    writeln!(out, "# nodes {} edges {}", s.node_count(), s.edge_count())?;
    for &(u, v) in &s.edges {
        writeln!(out, "{} {}", ids[u], ids[v])?;
    }
    out.flush()?;

    let sidecar = a.output.with_extension("json");
    let node_ids: Vec<u64> = s.nodes.iter().map(|v| ids[v]).collect();
    let doc = json!({
        "input": a.input,
        "input_nodes": g.node_count(),
        "input_edges": g.edge_count(),
        "original_ids": node_ids,
        "sample": s,
    });
    serde_json::to_writer_pretty(writer(Some(&sidecar))?, &doc)?;
    eprintln!(
        "{} sampled {} nodes and {} edges ({} restarts); sidecar {}",
        cfg.method,
        s.node_count(),
        s.edge_count(),
        s.telemetry.restarts,
        sidecar.display()
    );
    Ok(())
}

fn cmd_properties(a: PropertiesArgs) -> Result<()> {
    let loaded = load(&a.input)?;
    let mut options = PropertyOptions { community_seed: a.seed, ..Default::default() };
    options.path_mode = if a.exact_paths {
        PathMode::Exact
    } else if let Some(sources) = a.path_sources {
        PathMode::Sampled { sources, seed: a.seed }
    } else {
        PathMode::Auto { sources: DEFAULT_PATH_SOURCES, seed: a.seed, exact_threshold: EXACT_PATH_THRESHOLD }
    };
    if a.exclude_low_degree {
        options.low_degree = LowDegreeRule::Exclude;
    }
    let report: PropertyReport64 = compute_report(&loaded.graph, &options)?;
    if let Some(dir) = &a.dist_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for kind in DistributionKind::ALL {
            if let Some(d) = report.distribution(kind) {
                d.write_csv(writer(Some(&dir.join(format!("{}.dist.csv", kind.name()))))?)?;
            }
        }
    }
    let mut out = writer(a.output.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn cmd_bench_run(config: &Path, workers: Option<usize>, output: Option<PathBuf>) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig::from_file(config)?;
    if workers.is_some() {
        cfg.workers = workers;
    }
    if let Some(out) = output {
        cfg.output_dir = out;
    }
    let report: RunReport = run_experiment(&cfg)?;
    eprintln!(
        "{} raw rows ({} error rows), {} rmse rows, {} warnings -> {}",
        report.raw_rows,
        report.error_rows,
        report.tables.rmse.len(),
        report.tables.warnings,
        report.output_dir.display()
    );
    for f in &report.failures {
        eprintln!("dataset {} failed: {}", f.name, f.error);
    }
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} of {} datasets failed", report.failures.len(), cfg.datasets.len());
        Ok(ExitCode::from(2))
    }
}
