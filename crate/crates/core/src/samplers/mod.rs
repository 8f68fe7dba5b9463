//! Traversal-based samplers. Every sampler maps `(graph, phi, seed)` to a
//! [`Sample`] of exactly `ceil(phi * n)` nodes.

mod collector;
mod expansion;
mod frontier;
mod hybrid_jump;
mod list;
mod rank_degree;
mod replay;

pub use expansion::{expansion_factor, expansion_sample};
pub use frontier::frontier_sample;
pub use hybrid_jump::{hybrid_jump_sample, HybridWalk, WalkStep};
pub use list::list_sample;
pub use rank_degree::rank_degree_sample;
pub use replay::{replay, ReplayError};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeSet};

pub const DEFAULT_WALKERS: usize = 10;
pub const DEFAULT_RD_SEEDS: usize = 10;
pub const DEFAULT_RD_TOP_FRACTION: f64 = 0.1;
pub const DEFAULT_DEGREE_PROBES: usize = 1000;
pub const DEFAULT_JUMP_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fs,
    Xs,
    Rd,
    Ls,
    Hj,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Fs, Method::Xs, Method::Rd, Method::Ls, Method::Hj];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fs => "fs",
            Method::Xs => "xs",
            Method::Rd => "rd",
            Method::Ls => "ls",
            Method::Hj => "hj",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let lower = name.to_ascii_lowercase();
        Self::ALL.into_iter().find(|m| m.name() == lower)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name().to_ascii_uppercase())
    }
}

/// Which edges a finished sample keeps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FinalizeMode {
    /// Only edges the sampler traversed or added.
    Collected,
    /// Every edge of the graph with both endpoints sampled.
    #[default]
    Induced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplerParams {
    /// Frontier sampling: number of concurrent walkers.
    pub walkers: usize,
    /// Rank degree: number of initial seeds.
    pub rd_seeds: usize,
    /// Rank degree: share of ranked neighbours promoted each step.
    pub rd_top_fraction: f64,
    /// Hybrid jump: jump probability; `None` means `min(1, 1 / estimated degree)`.
    pub jump_probability: Option<f64>,
    /// Hybrid jump: uniform node probes used to estimate the average degree.
    pub degree_probes: usize,
    /// Hybrid jump: BFS depth of the jump list.
    pub jump_depth: usize,
}

impl Default for SamplerParams {
    fn default() -> Self {
        Self {
            walkers: DEFAULT_WALKERS,
            rd_seeds: DEFAULT_RD_SEEDS,
            rd_top_fraction: DEFAULT_RD_TOP_FRACTION,
            jump_probability: None,
            degree_probes: DEFAULT_DEGREE_PROBES,
            jump_depth: DEFAULT_JUMP_DEPTH,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub method: Method,
    pub phi: f64,
    pub seed: u64,
    #[serde(default)]
    pub mode: FinalizeMode,
    #[serde(default)]
    pub params: SamplerParams,
    /// First seed node instead of a uniform draw (the first walker for FS).
    #[serde(default)]
    pub start: Option<NodeId>,
    /// Keep the full step log (and FS walker draws) for replay.
    #[serde(default)]
    pub trace: bool,
}

impl SamplerConfig {
    pub fn new(method: Method, phi: f64, seed: u64) -> Self {
        Self {
            method,
            phi,
            seed,
            mode: FinalizeMode::default(),
            params: SamplerParams::default(),
            start: None,
            trace: false,
        }
    }

    pub fn with_mode(mut self, mode: FinalizeMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_params(mut self, params: SamplerParams) -> Self {
        self.params = params;
        self
    }

    pub fn with_start(mut self, start: NodeId) -> Self {
        self.start = Some(start);
        self
    }

    pub fn traced(mut self) -> Self {
        self.trace = true;
        self
    }

    /// Checks parameter ranges against a graph of `n` nodes and returns the
    /// node budget.
    pub fn validate(&self, n: usize) -> Result<usize> {
        let p = &self.params;
        if !(self.phi > 0.0 && self.phi <= 1.0) {
            return Err(Error::Config(format!("phi must lie in (0, 1], got {}", self.phi)));
        }
        if self.phi * (n as f64) < 1.0 - 1e-9 {
            return Err(Error::Config(format!("phi * n = {} is below one node", self.phi * n as f64)));
        }
        if let Some(s) = self.start {
            if s >= n {
                return Err(Error::NodeOutOfRange { id: s, n });
            }
        }
        match self.method {
            Method::Fs if p.walkers == 0 || p.walkers > n => {
                return Err(Error::Config(format!("walker count must lie in [1, {n}], got {}", p.walkers)));
            }
            Method::Rd if p.rd_seeds == 0 => {
                return Err(Error::Config("rank degree needs at least one seed".into()));
            }
            Method::Rd if !(p.rd_top_fraction > 0.0 && p.rd_top_fraction <= 1.0) => {
                return Err(Error::Config(format!("top fraction must lie in (0, 1], got {}", p.rd_top_fraction)));
            }
            Method::Hj => {
                if let Some(a) = p.jump_probability {
                    if !(0.0..=1.0).contains(&a) {
                        return Err(Error::Config(format!("jump probability must lie in [0, 1], got {a}")));
                    }
                }
                if p.jump_depth == 0 {
                    return Err(Error::Config("jump depth must be at least 1".into()));
                }
            }
            _ => {}
        }
        Ok(budget(n, self.phi))
    }
}

/// `ceil(phi * n)`, forgiving float noise just above an integer.
pub fn budget(n: usize, phi: f64) -> usize {
    ((phi * n as f64 - 1e-9).ceil().max(1.0) as usize).min(n)
}

/// One traversal event, in the order the sampler performed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// A node drawn uniformly (initial seed, walker or restart).
    Seed { node: NodeId },
    /// `to` reached over the edge from `from`.
    Edge { from: NodeId, to: NodeId },
    /// Metropolis–Hastings proposal.
    Propose { from: NodeId, to: NodeId, accepted: bool },
    /// Jump to a node of the BFS list built around `anchor`.
    Jump { anchor: NodeId, to: NodeId },
}

/// Walker degrees at one FS selection and the index that was picked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkerDraw {
    pub degrees: Vec<usize>,
    pub chosen: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Telemetry {
    pub steps: usize,
    pub restarts: usize,
    pub proposals: usize,
    pub accepted: usize,
    pub jumps: usize,
    /// Jump probability used by HJ.
    pub jump_probability: Option<f64>,
    /// Nodes removed from the tail to meet the budget, most recent first.
    pub trimmed: Vec<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log: Option<Vec<Step>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walker_draws: Option<Vec<WalkerDraw>>,
}

/// Nodes in insertion order plus traversed edges, before trimming.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawSample {
    pub order: Vec<NodeId>,
    pub edges: Vec<(NodeId, NodeId)>,
    pub telemetry: Telemetry,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub config: SamplerConfig,
    /// Finalize mode actually applied (LS always induces).
    pub mode: FinalizeMode,
    pub budget: usize,
    pub nodes: NodeSet,
    /// Sampled nodes in the order they were added.
    pub order: Vec<NodeId>,
    /// Edges with `u < v`, ascending.
    pub edges: Vec<(NodeId, NodeId)>,
    pub telemetry: Telemetry,
}

impl Sample {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The sample as a graph; node `i` is `self.nodes.as_slice()[i]`.
    pub fn subgraph(&self) -> Graph {
        let ids = self.nodes.as_slice();
        let local = |v: NodeId| ids.binary_search(&v).expect("edge endpoint outside sample");
        let pairs: Vec<(NodeId, NodeId)> = self.edges.iter().map(|&(u, v)| (local(u), local(v))).collect();
        Graph::from_sorted_pairs(ids.len(), &pairs)
    }
}

/// Trims `raw` to the budget of `cfg`, dropping the most recently added
/// nodes first, and settles the edge set according to `cfg.mode`.
pub fn finalize(g: &Graph, raw: RawSample, cfg: &SamplerConfig) -> Result<Sample> {
    let budget = cfg.validate(g.node_count())?;
    finalize_with(g, raw, cfg, cfg.mode, budget)
}

pub(crate) fn finalize_with(
    g: &Graph,
    raw: RawSample,
    config: &SamplerConfig,
    mode: FinalizeMode,
    budget: usize,
) -> Result<Sample> {
    let RawSample { mut order, edges, mut telemetry } = raw;
    if order.is_empty() {
        return Err(Error::EmptySequence);
    }
    while order.len() > budget {
        telemetry.trimmed.push(order.pop().expect("non-empty"));
    }
    let mut member = vec![false; g.node_count()];
    for &v in &order {
        g.check_node(v)?;
        member[v] = true;
    }
    let mut kept: Vec<(NodeId, NodeId)> = match mode {
        FinalizeMode::Collected => edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .filter(|&(u, v)| member[u] && member[v] && u != v)
            .collect(),
        FinalizeMode::Induced => order
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .filter(|&(_, v)| member[v])
            .collect(),
    };
    kept.sort_unstable();
    kept.dedup();
    let mut ids = order.clone();
    ids.sort_unstable();
    Ok(Sample {
        config: *config,
        mode,
        budget,
        nodes: NodeSet::from_sorted_unchecked(ids),
        order,
        edges: kept,
        telemetry,
    })
}

/// Runs the sampler selected by `cfg.method`.
pub fn sample(g: &Graph, cfg: &SamplerConfig) -> Result<Sample> {
    match cfg.method {
        Method::Fs => frontier_sample(g, cfg),
        Method::Xs => expansion_sample(g, cfg),
        Method::Rd => rank_degree_sample(g, cfg),
        Method::Ls => list_sample(g, cfg),
        Method::Hj => hybrid_jump_sample(g, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;
    use proptest::prelude::*;

    fn raw(order: Vec<NodeId>, edges: Vec<(NodeId, NodeId)>) -> RawSample {
        RawSample { order, edges, telemetry: Telemetry::default() }
    }

    #[test]
    fn budget_is_ceiling() {
        assert_eq!(budget(23166, 0.02), 464);
        assert_eq!(budget(100, 0.1), 10);
        assert_eq!(budget(50, 0.02), 1);
        assert_eq!(budget(7, 1.0), 7);
    }

    #[test]
    fn induction_completes_triangle() {
        let g = complete(3);
        let cfg = SamplerConfig::new(Method::Xs, 1.0, 0);
        let s = finalize(&g, raw(vec![0, 1, 2], vec![(0, 1), (2, 1)]), &cfg).unwrap();
        assert_eq!(s.edges, vec![(0, 1), (0, 2), (1, 2)]);
        let cfg = cfg.with_mode(FinalizeMode::Collected);
        let c = finalize(&g, raw(vec![0, 1, 2], vec![(0, 1), (2, 1)]), &cfg).unwrap();
        assert_eq!(c.edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn trim_drops_most_recent() {
        let g = complete(5);
        let cfg = SamplerConfig::new(Method::Rd, 0.6, 0).with_mode(FinalizeMode::Collected);
        let s = finalize(&g, raw(vec![3, 1, 4, 0], vec![(3, 1), (1, 4), (4, 0)]), &cfg).unwrap();
        assert_eq!(s.order, vec![3, 1, 4]);
        assert_eq!(s.telemetry.trimmed, vec![0]);
        assert_eq!(s.edges, vec![(1, 3), (1, 4)]);
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let bad = |cfg: SamplerConfig| cfg.validate(100).is_err();
        assert!(bad(SamplerConfig::new(Method::Fs, 0.0, 0)));
        assert!(bad(SamplerConfig::new(Method::Fs, 1.5, 0)));
        assert!(bad(SamplerConfig::new(Method::Xs, 0.001, 0)));
        let mut p = SamplerParams::default();
        p.rd_top_fraction = 0.0;
        assert!(bad(SamplerConfig::new(Method::Rd, 0.1, 0).with_params(p)));
        p = SamplerParams { walkers: 101, ..Default::default() };
        assert!(bad(SamplerConfig::new(Method::Fs, 0.1, 0).with_params(p)));
        p = SamplerParams { jump_probability: Some(1.5), ..Default::default() };
        assert!(bad(SamplerConfig::new(Method::Hj, 0.1, 0).with_params(p)));
        assert!(bad(SamplerConfig::new(Method::Ls, 0.1, 0).with_start(100)));
        assert_eq!(SamplerConfig::new(Method::Ls, 0.1, 0).validate(100).unwrap(), 10);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::from_name(m.name()), Some(m));
            assert_eq!(Method::from_name(&m.to_string()), Some(m));
        }
    }

    /// Disconnected graph with isolated nodes: three components of a gnp,
    /// a path and two singletons.
    fn patchwork() -> Graph {
        let a = gnp(30, 0.15, 9);
        let mut edges: Vec<(NodeId, NodeId)> = a.edges().collect();
        edges.extend((30..39).map(|v| (v, v + 1)));
        Graph::from_edges(42, edges).unwrap()
    }

    #[test]
    fn full_budget_takes_every_node() {
        for g in [patchwork(), barbell(), star(12), gnp(60, 0.04, 2)] {
            for method in Method::ALL {
                for seed in 0..3 {
                    let s = sample(&g, &SamplerConfig::new(method, 1.0, seed)).unwrap();
                    assert_eq!(s.node_count(), g.node_count(), "{method} seed {seed}");
                    assert_eq!(s.edge_count(), g.edge_count(), "{method} seed {seed}");
                }
            }
        }
    }

    fn check_contract(g: &Graph, cfg: &SamplerConfig) -> std::result::Result<(), TestCaseError> {
        let s = sample(g, cfg).unwrap();
        prop_assert_eq!(s.node_count(), budget(g.node_count(), cfg.phi));
        prop_assert_eq!(s.order.len(), s.node_count());
        for &(u, v) in &s.edges {
            prop_assert!(u < v && g.has_edge(u, v));
            prop_assert!(s.nodes.contains(u) && s.nodes.contains(v));
        }
        if s.mode == FinalizeMode::Induced {
            let brute: Vec<(NodeId, NodeId)> =
                g.edges().filter(|&(u, v)| s.nodes.contains(u) && s.nodes.contains(v)).collect();
            prop_assert_eq!(&s.edges, &brute);
        }
        prop_assert!(replay(g, &s).is_ok(), "{:?}", replay(g, &s));
        prop_assert_eq!(&s, &sample(g, cfg).unwrap());
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn every_sampler_honours_the_contract(
            n in 12usize..80,
            p in 0.02f64..0.3,
            graph_seed in 0u64..1000,
            seed in 0u64..1000,
            phi in 0.05f64..1.0,
            method in 0usize..5,
            collected in any::<bool>(),
        ) {
            let g = gnp(n, p, graph_seed);
            let phi = phi.max(1.0 / n as f64);
            let mode = if collected { FinalizeMode::Collected } else { FinalizeMode::Induced };
            let cfg = SamplerConfig::new(Method::ALL[method], phi, seed).with_mode(mode).traced();
            check_contract(&g, &cfg)?;
        }
    }

    #[test]
    fn contract_holds_on_disconnected_graph() {
        let g = patchwork();
        for method in Method::ALL {
            for seed in 0..20 {
                for phi in [0.1, 0.5, 0.9] {
                    let cfg = SamplerConfig::new(method, phi, seed).traced();
                    check_contract(&g, &cfg).unwrap();
                    check_contract(&g, &cfg.with_mode(FinalizeMode::Collected)).unwrap();
                }
            }
        }
    }

    #[test]
    fn subgraph_matches_induced_subgraph() {
        let g = gnp(70, 0.08, 4);
        for method in Method::ALL {
            let s = sample(&g, &SamplerConfig::new(method, 0.3, 1)).unwrap();
            assert_eq!(s.subgraph(), crate::graph::induced_subgraph(&g, &s.nodes).unwrap());
        }
    }
}
