//! Benchmark sweeps: every (dataset, method, phi, repetition) cell is
//! sampled, measured and compared with the original graph.

mod aggregate;
mod config;
mod output;

pub use aggregate::{
    aggregate, summarize, summary_value, JsdRawRow, JsdRow, OriginalRow, PointStat, RawRow, RmseRow, Status,
    SummaryRow, Tables,
};
pub use config::{
    cell_seed, DatasetSpec, ExperimentConfig, DEFAULT_DISTRIBUTION_PHI, DEFAULT_PHIS, DEFAULT_REPETITIONS,
};
pub use output::{
    read_rows, write_rows, JSD_CSV, JSD_RAW_CSV, META_JSON, ORIGINALS_CSV, POINT_STATS_CSV, RAW_CSV, RMSE_CSV,
    SUMMARY_CSV,
};

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::distribution::{Distribution, DistributionKind};
use crate::error::{io_at, Error, Result};
use crate::generators::generate;
use crate::graph::{load_edge_list, EdgeListSource, Graph};
use crate::metrics::{jsd, LogBase};
use crate::properties::{compute_report, LowDegreeRule, PathMode, Property, PropertyOptions, PropertyReport};
use crate::samplers::{sample, Method, SamplerConfig};

/// Loads or generates the graph of a dataset entry.
pub fn load_dataset(entry: &DatasetSpec) -> Result<Graph> {
    match (&entry.path, &entry.generator) {
        (Some(path), None) => Ok(load_edge_list(&EdgeListSource::path(path))?.graph),
        (None, Some(gen)) => generate(gen),
        _ => Err(Error::Config(format!("dataset {:?} needs exactly one of path and generator", entry.name))),
    }
}

fn reseed(mode: PathMode, seed: u64) -> PathMode {
    match mode {
        PathMode::Exact => PathMode::Exact,
        PathMode::Sampled { sources, .. } => PathMode::Sampled { sources, seed },
        PathMode::Auto { sources, exact_threshold, .. } => PathMode::Auto { sources, seed, exact_threshold },
    }
}

/// Content hash of a graph together with the options that shape its report.
pub fn report_key(g: &Graph, options: &PropertyOptions) -> String {
    let mut h = Sha256::new();
    h.update(b"gsample-report-v1\0");
    h.update(serde_json::to_vec(options).expect("options serialize"));
    h.update((g.node_count() as u64).to_le_bytes());
    for v in 0..g.node_count() {
        h.update((g.degree(v) as u64).to_le_bytes());
        for &u in g.neighbors(v) {
            h.update((u as u64).to_le_bytes());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Computes the report of an original graph, reusing `<cache_dir>/<hash>.json`
/// when present. Returns whether the cache was hit.
pub fn cached_report(g: &Graph, options: &PropertyOptions, cache_dir: &Path) -> Result<(PropertyReport<f64>, bool)> {
    let path = cache_dir.join(format!("{}.json", report_key(g, options)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(report) = serde_json::from_str(&text) {
            return Ok((report, true));
        }
    }
    let report = compute_report(g, options)?;
    std::fs::create_dir_all(cache_dir).map_err(io_at(cache_dir))?;
    output::write_json(&path, &report)?;
    Ok((report, false))
}

fn status_of(value: Option<f64>) -> Status {
    if value.is_some() {
        Status::Ok
    } else {
        Status::Undefined
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellTiming {
    pub dataset: String,
    pub method: Method,
    pub phi: f64,
    pub rep: usize,
    pub seed: u64,
    pub sample_ms: f64,
    pub properties_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub name: String,
    pub category: Option<String>,
    pub nodes: usize,
    pub edges: usize,
    pub load_ms: f64,
    pub original_ms: f64,
    pub cache_hit: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetFailure {
    pub name: String,
    pub error: String,
}

/// Everything in `meta.json`; the only output that varies between
/// identical runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMeta {
    pub version: String,
    pub config: ExperimentConfig,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub workers: usize,
    pub datasets: Vec<DatasetMeta>,
    pub failures: Vec<DatasetFailure>,
    pub warnings: usize,
    pub cells: Vec<CellTiming>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub output_dir: PathBuf,
    pub tables: Tables,
    pub raw_rows: usize,
    pub error_rows: usize,
    pub failures: Vec<DatasetFailure>,
}

struct CellResult {
    rows: Vec<RawRow>,
    jsd: Vec<JsdRawRow>,
    distributions: Vec<Distribution<f64>>,
    timing: CellTiming,
}

struct Cell {
    method: Method,
    phi: f64,
    rep: usize,
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn run_cell(
    g: &Graph,
    dataset: &str,
    cell: &Cell,
    cfg: &ExperimentConfig,
    original: &PropertyReport<f64>,
) -> CellResult {
    let seed = cell_seed(cfg.master_seed, dataset, cell.method, cell.phi, cell.rep);
    let keep_distributions = (cell.phi - cfg.distribution_phi).abs() < 1e-12;
    let sampler = SamplerConfig {
        method: cell.method,
        phi: cell.phi,
        seed,
        mode: cfg.mode,
        params: cfg.sampler_params,
        start: None,
        trace: false,
    };
    let options = PropertyOptions {
        path_mode: reseed(cfg.path_mode, seed),
        low_degree: LowDegreeRule::Zero,
        community_seed: seed,
    };
    let mut timing = CellTiming {
        dataset: dataset.to_string(),
        method: cell.method,
        phi: cell.phi,
        rep: cell.rep,
        seed,
        sample_ms: 0.0,
        properties_ms: 0.0,
        error: None,
    };

    let t = Instant::now();
    let drawn = sample(g, &sampler);
    timing.sample_ms = millis(t);
    let t = Instant::now();
    let report = drawn.and_then(|s| compute_report::<f64>(&s.subgraph(), &options));
    timing.properties_ms = millis(t);

    let row = |property: Property, value: Option<f64>, status: Status| RawRow {
        dataset: dataset.to_string(),
        method: cell.method,
        phi: cell.phi,
        rep: cell.rep,
        property,
        value,
        status,
    };
    let jsd_row = |distribution: DistributionKind, jsd: Option<f64>, status: Status| JsdRawRow {
        dataset: dataset.to_string(),
        method: cell.method,
        phi: cell.phi,
        rep: cell.rep,
        distribution,
        jsd,
        status,
    };

    match report {
        Err(e) => {
            timing.error = Some(e.to_string());
            let rows = Property::ALL.iter().map(|&p| row(p, None, Status::Error)).collect();
            let jsd = if keep_distributions {
                DistributionKind::ALL.iter().map(|&k| jsd_row(k, None, Status::Error)).collect()
            } else {
                Vec::new()
            };
            CellResult { rows, jsd, distributions: Vec::new(), timing }
        }
        Ok(report) => {
            let rows = Property::ALL
                .iter()
                .map(|&p| {
                    let v = report.value(p);
                    row(p, v, status_of(v))
                })
                .collect();
            let mut jsd_rows = Vec::new();
            let mut distributions = Vec::new();
            if keep_distributions {
                for kind in DistributionKind::ALL {
                    let d = match (report.distribution(kind), original.distribution(kind)) {
                        (Some(s), Some(o)) => jsd(s, o, LogBase::Two).ok(),
                        _ => None,
                    };
                    jsd_rows.push(jsd_row(kind, d, status_of(d)));
                    distributions.extend(report.distribution(kind).cloned());
                }
            }
            CellResult { rows, jsd: jsd_rows, distributions, timing }
        }
    }
}

fn dist_file(dir: &Path, parts: &[&str]) -> PathBuf {
    dir.join(format!("{}.dist.csv", parts.join("__")))
}

/// Runs the full sweep described by `cfg` and writes the report bundle to
/// `cfg.output_dir`. Datasets that fail to load are skipped and listed in
/// [`RunReport::failures`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunReport> {
    cfg.validate()?;
    let started = unix_now();
    let out = &cfg.output_dir;
    let dist_dir = out.join("dist");
    let originals_dir = out.join("originals");
    for dir in [out, &dist_dir, &originals_dir] {
        std::fs::create_dir_all(dir).map_err(io_at(dir))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let mut raw = Vec::new();
    let mut originals = Vec::new();
    let mut jsd_raw = Vec::new();
    let mut datasets = Vec::new();
    let mut failures = Vec::new();
    let mut cells_meta = Vec::new();

    for entry in &cfg.datasets {
        let t = Instant::now();
        let g = match load_dataset(entry) {
            Ok(g) => g,
            Err(e) => {
                failures.push(DatasetFailure { name: entry.name.clone(), error: e.to_string() });
                continue;
            }
        };
        let load_ms = millis(t);
        let t = Instant::now();
        let options = PropertyOptions {
            path_mode: reseed(cfg.original_path_mode, cfg.master_seed),
            low_degree: LowDegreeRule::Zero,
            community_seed: cfg.master_seed,
        };
        let (original, cache_hit) = match cached_report(&g, &options, &cfg.cache_dir()) {
            Ok(r) => r,
            Err(e) => {
                failures.push(DatasetFailure { name: entry.name.clone(), error: e.to_string() });
                continue;
            }
        };
        datasets.push(DatasetMeta {
            name: entry.name.clone(),
            category: entry.category.clone(),
            nodes: g.node_count(),
            edges: g.edge_count(),
            load_ms,
            original_ms: millis(t),
            cache_hit,
        });
        for p in Property::ALL {
            let v = original.value(p);
            originals.push(OriginalRow { dataset: entry.name.clone(), property: p, value: v, status: status_of(v) });
        }
        for kind in DistributionKind::ALL {
            if let Some(d) = original.distribution(kind) {
                output::write_distribution(&dist_file(&originals_dir, &[&entry.name, kind.name()]), d)?;
            }
        }

        let cells: Vec<Cell> = cfg
            .methods
            .iter()
            .flat_map(|&method| {
                cfg.phis.iter().flat_map(move |&phi| (0..cfg.repetitions).map(move |rep| Cell { method, phi, rep }))
            })
            .collect();
        let results: Vec<CellResult> =
            pool.install(|| cells.par_iter().map(|c| run_cell(&g, &entry.name, c, cfg, &original)).collect());

        for &method in &cfg.methods {
            for kind in DistributionKind::ALL {
                let dists: Vec<Distribution<f64>> = results
                    .iter()
                    .filter(|r| r.timing.method == method)
                    .flat_map(|r| r.distributions.iter().filter(|d| d.kind == kind).cloned())
                    .collect();
                if let Ok(avg) = Distribution::average(&dists) {
                    output::write_distribution(&dist_file(&dist_dir, &[&entry.name, method.name(), kind.name()]), &avg)?;
                }
            }
        }
        for r in results {
            raw.extend(r.rows);
            jsd_raw.extend(r.jsd);
            cells_meta.push(r.timing);
        }
    }

    output::write_rows(&out.join(RAW_CSV), &raw)?;
    output::write_rows(&out.join(ORIGINALS_CSV), &originals)?;
    output::write_rows(&out.join(JSD_RAW_CSV), &jsd_raw)?;
    let tables = aggregate(&raw, &originals, &jsd_raw);
    output::write_tables(out, &tables)?;

    let meta = RunMeta {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        started_unix: started,
        finished_unix: unix_now(),
        workers: pool.current_num_threads(),
        datasets,
        failures: failures.clone(),
        warnings: tables.warnings,
        cells: cells_meta,
    };
    output::write_json(&out.join(META_JSON), &meta)?;

    Ok(RunReport {
        output_dir: out.clone(),
        error_rows: raw.iter().filter(|r| r.status == Status::Error).count(),
        raw_rows: raw.len(),
        tables,
        failures,
    })
}

/// Rebuilds the tables from `raw.csv` plus the `originals.csv` and
/// `jsd_raw.csv` found next to it, writing them into `out_dir`.
pub fn aggregate_files(raw_path: &Path, out_dir: &Path) -> Result<Tables> {
    let dir = raw_path.parent().unwrap_or(Path::new(""));
    let raw: Vec<RawRow> = read_rows(raw_path)?;
    let originals: Vec<OriginalRow> = read_rows(&dir.join(ORIGINALS_CSV))?;
    let jsd_path = dir.join(JSD_RAW_CSV);
    let jsd_raw: Vec<JsdRawRow> = if jsd_path.exists() { read_rows(&jsd_path)? } else { Vec::new() };
    let tables = aggregate(&raw, &originals, &jsd_raw);
    std::fs::create_dir_all(out_dir).map_err(io_at(out_dir))?;
    output::write_tables(out_dir, &tables)?;
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{GeneratorConfig, ModelParams};

    fn tiny(out: &Path) -> ExperimentConfig {
        let sw = GeneratorConfig::new(ModelParams::SmallWorld { ring_degree: 6, rewire: 0.1 }, 400, 3);
        let mut cfg = ExperimentConfig::new(vec![DatasetSpec::generated("sw", sw)], out);
        cfg.methods = vec![Method::Ls];
        cfg.phis = vec![0.02];
        cfg.repetitions = 2;
        cfg.master_seed = 9;
        cfg.workers = Some(2);
        cfg
    }

    #[test]
    fn bundle_has_expected_rows_and_files() {
        let dir = tempfile::tempdir().unwrap();
        let report = run_experiment(&tiny(dir.path())).unwrap();
        assert_eq!(report.raw_rows, 2 * 6);
        assert_eq!(report.error_rows, 0);
        assert!(report.failures.is_empty());
        let dists: Vec<_> = std::fs::read_dir(dir.path().join("dist")).unwrap().collect();
        assert_eq!(dists.len(), 3);
        let raw: Vec<RawRow> = read_rows(&dir.path().join(RAW_CSV)).unwrap();
        assert_eq!(raw.len(), 12);
        // Two reps draw from different seeds.
        assert_ne!(cell_seed(9, "sw", Method::Ls, 0.02, 0), cell_seed(9, "sw", Method::Ls, 0.02, 1));
        for name in [ORIGINALS_CSV, JSD_RAW_CSV, POINT_STATS_CSV, RMSE_CSV, JSD_CSV, SUMMARY_CSV, META_JSON] {
            assert!(dir.path().join(name).exists(), "{name} missing");
        }
    }

    #[test]
    fn rerun_is_byte_identical_and_uses_cache() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_experiment(&tiny(a.path())).unwrap();
        let mut cfg = tiny(b.path());
        cfg.workers = Some(1);
        run_experiment(&cfg).unwrap();
        for name in [RAW_CSV, ORIGINALS_CSV, JSD_RAW_CSV, POINT_STATS_CSV, RMSE_CSV, JSD_CSV, SUMMARY_CSV] {
            let x = std::fs::read(a.path().join(name)).unwrap();
            let y = std::fs::read(b.path().join(name)).unwrap();
            assert_eq!(x, y, "{name} differs");
        }
        cfg.cache_dir = Some(a.path().join("cache"));
        run_experiment(&cfg).unwrap();
        let meta: RunMeta = serde_json::from_str(&std::fs::read_to_string(b.path().join(META_JSON)).unwrap()).unwrap();
        assert!(meta.datasets[0].cache_hit);
    }

    #[test]
    fn bad_dataset_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = tiny(dir.path());
        cfg.datasets.push(DatasetSpec::file("missing", dir.path().join("nope.txt")));
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].name, "missing");
        assert_eq!(report.raw_rows, 12);
    }

    #[test]
    fn aggregate_files_matches_run() {
        let dir = tempfile::tempdir().unwrap();
        let report = run_experiment(&tiny(dir.path())).unwrap();
        let again = dir.path().join("again");
        let tables = aggregate_files(&dir.path().join(RAW_CSV), &again).unwrap();
        assert_eq!(tables.rmse.len(), report.tables.rmse.len());
        for name in [POINT_STATS_CSV, RMSE_CSV, JSD_CSV, SUMMARY_CSV] {
            assert_eq!(
                std::fs::read(dir.path().join(name)).unwrap(),
                std::fs::read(again.join(name)).unwrap(),
                "{name}"
            );
        }
    }
}
