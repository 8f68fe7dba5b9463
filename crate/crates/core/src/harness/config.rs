use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{io_at, Error, Result};
use crate::generators::GeneratorConfig;
use crate::properties::PathMode;
use crate::samplers::{FinalizeMode, Method, SamplerParams};

pub const DEFAULT_PHIS: [f64; 5] = [0.02, 0.04, 0.06, 0.08, 0.1];
pub const DEFAULT_REPETITIONS: usize = 10;
pub const DEFAULT_DISTRIBUTION_PHI: f64 = 0.02;

/// A graph to sample: an edge-list file or a generator run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorConfig>,
}

impl DatasetSpec {
    pub fn file(name: impl Into<String>, path: impl Into<PathBuf>) -> Self {
        Self { name: name.into(), category: None, path: Some(path.into()), generator: None }
    }

    pub fn generated(name: impl Into<String>, generator: GeneratorConfig) -> Self {
        Self { name: name.into(), category: Some("synthetic".into()), path: None, generator: Some(generator) }
    }
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_phis() -> Vec<f64> {
    DEFAULT_PHIS.to_vec()
}

fn default_repetitions() -> usize {
    DEFAULT_REPETITIONS
}

fn default_distribution_phi() -> f64 {
    DEFAULT_DISTRIBUTION_PHI
}

fn default_output() -> PathBuf {
    PathBuf::from("bench-out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetSpec>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default)]
    pub sampler_params: SamplerParams,
    #[serde(default = "default_phis")]
    pub phis: Vec<f64>,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub mode: FinalizeMode,
    /// Path-length estimation for sampled graphs; the seed inside is
    /// replaced per cell.
    #[serde(default)]
    pub path_mode: PathMode,
    /// Path-length estimation for original graphs.
    #[serde(default)]
    pub original_path_mode: PathMode,
    /// Sampling fraction whose distributions are written and compared.
    #[serde(default = "default_distribution_phi")]
    pub distribution_phi: f64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// Defaults to `<output_dir>/cache`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads; all cores when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(datasets: Vec<DatasetSpec>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            datasets,
            methods: default_methods(),
            sampler_params: SamplerParams::default(),
            phis: default_phis(),
            repetitions: DEFAULT_REPETITIONS,
            master_seed: 0,
            mode: FinalizeMode::default(),
            path_mode: PathMode::default(),
            original_path_mode: PathMode::default(),
            distribution_phi: DEFAULT_DISTRIBUTION_PHI,
            output_dir: output_dir.into(),
            cache_dir: None,
            workers: None,
        }
    }

    /// Reads a JSON config; relative paths inside are taken relative to the
    /// file's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_at(path))?;
        let mut cfg: Self = serde_json::from_str(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for d in &mut cfg.datasets {
            if let Some(p) = &mut d.path {
                rebase(p);
            }
        }
        rebase(&mut cfg.output_dir);
        if let Some(c) = &mut cfg.cache_dir {
            rebase(c);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.datasets.is_empty() {
            return bad("no datasets configured".into());
        }
        let mut names = HashSet::new();
        for d in &self.datasets {
            if !names.insert(d.name.as_str()) {
                return bad(format!("dataset name {:?} used twice", d.name));
            }
            if d.name.is_empty() || d.name.contains(['/', '\\']) {
                return bad(format!("dataset name {:?} is not a plain file stem", d.name));
            }
            if d.path.is_some() == d.generator.is_some() {
                return bad(format!("dataset {:?} needs exactly one of path and generator", d.name));
            }
        }
        if self.methods.is_empty() {
            return bad("no sampling methods configured".into());
        }
        if self.phis.is_empty() || self.phis.iter().any(|&p| !(p > 0.0 && p <= 1.0)) {
            return bad(format!("sampling fractions must lie in (0, 1]: {:?}", self.phis));
        }
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1".into());
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        Ok(())
    }

    pub fn cache_dir(&self) -> PathBuf {
        self.cache_dir.clone().unwrap_or_else(|| self.output_dir.join("cache"))
    }
}

/// Seed of one `(dataset, method, phi, repetition)` cell, so any cell can be
/// re-run on its own.
pub fn cell_seed(master: u64, dataset: &str, method: Method, phi: f64, rep: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update((dataset.len() as u64).to_le_bytes());
    h.update(dataset.as_bytes());
    h.update(method.name().as_bytes());
    h.update(phi.to_bits().to_le_bytes());
    h.update((rep as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}
