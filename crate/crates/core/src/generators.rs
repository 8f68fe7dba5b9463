//! Synthetic benchmark graphs: forest fire, Watts–Strogatz small world and a
//! preferential/uniform mixed attachment model.
//!
//! All generators are deterministic in `(config, seed)` and return graphs that
//! satisfy every [`Graph`] invariant.

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Forward-burning probability giving an average degree of about 16.31 at
/// 300,000 nodes (see [`calibrate_forest_fire`]). The process is close to
/// critical here, so smaller graphs come out sparser (about 14.7 at 10,000).
pub const DEFAULT_FOREST_FIRE_BURN: f64 = 0.48594;
pub const DEFAULT_RING_DEGREE: usize = 16;
/// Rewiring probability that brings k = 16 rings to an average clustering
/// coefficient of about 0.37.
pub const DEFAULT_REWIRE: f64 = 0.19;
pub const DEFAULT_MM_EDGES_PER_NODE: usize = 8;
pub const DEFAULT_MM_PREFERENTIAL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelParams {
    #[serde(rename = "ff")]
    ForestFire { forward_burn: f64 },
    #[serde(rename = "sw")]
    SmallWorld { ring_degree: usize, rewire: f64 },
    #[serde(rename = "mm")]
    MixedModel { edges_per_node: usize, preferential: f64 },
}

impl ModelParams {
    pub fn forest_fire() -> Self {
        Self::ForestFire { forward_burn: DEFAULT_FOREST_FIRE_BURN }
    }

    pub fn small_world() -> Self {
        Self::SmallWorld { ring_degree: DEFAULT_RING_DEGREE, rewire: DEFAULT_REWIRE }
    }

    pub fn mixed_model() -> Self {
        Self::MixedModel { edges_per_node: DEFAULT_MM_EDGES_PER_NODE, preferential: DEFAULT_MM_PREFERENTIAL }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::ForestFire { .. } => "ff",
            Self::SmallWorld { .. } => "sw",
            Self::MixedModel { .. } => "mm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub nodes: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub params: ModelParams,
}

impl GeneratorConfig {
    pub fn new(params: ModelParams, nodes: usize, seed: u64) -> Self {
        Self { nodes, seed, params }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let min_nodes = match self.params {
            ModelParams::ForestFire { forward_burn: p } => {
                if !(p > 0.0 && p < 1.0) {
                    return bad(format!("forest fire burn probability {p} not in (0, 1)"));
                }
                3
            }
            ModelParams::SmallWorld { ring_degree: k, rewire: p } => {
                if k < 2 || k % 2 != 0 {
                    return bad(format!("ring degree {k} must be even and at least 2"));
                }
                if !(0.0..=1.0).contains(&p) {
                    return bad(format!("rewire probability {p} not in [0, 1]"));
                }
                3.max(k + 1)
            }
            ModelParams::MixedModel { edges_per_node: k, preferential: beta } => {
                if k == 0 {
                    return bad("mixed model needs at least one edge per node".into());
                }
                if !(0.0..=1.0).contains(&beta) {
                    return bad(format!("preferential fraction {beta} not in [0, 1]"));
                }
                3.max(k + 1)
            }
        };
        if self.nodes < min_nodes {
            return bad(format!("{} nodes requested, model needs at least {min_nodes}", self.nodes));
        }
        Ok(())
    }
}

pub fn generate(config: &GeneratorConfig) -> Result<Graph> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.nodes;
    let adjacency = match config.params {
        ModelParams::ForestFire { forward_burn } => {
            forest_fire(n, forward_burn, usize::MAX, &mut rng).expect("uncapped")
        }
        ModelParams::SmallWorld { ring_degree, rewire } => small_world(n, ring_degree, rewire, &mut rng),
        ModelParams::MixedModel { edges_per_node, preferential } => {
            mixed_model(n, edges_per_node, preferential, &mut rng)
        }
    };
    let edges =
        adjacency.iter().enumerate().flat_map(|(u, adj)| adj.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::from_edges(n, edges)
}

/// Number of failures before the first success with success probability
/// `1 - p`; mean `p / (1 - p)`.
fn geometric<R: Rng>(rng: &mut R, p: f64) -> usize {
    let u: f64 = 1.0 - rng.gen::<f64>();
    (u.ln() / p.ln()).floor() as usize
}

/// Undirected forest fire with forward burning only. Each arriving node links
/// to a uniform ambassador and then burns outward: every burning node ignites
/// a geometric number of its not-yet-visited neighbors, all of which the
/// newcomer links to. Gives up with `None` once `max_edges` is exceeded.
fn forest_fire<R: Rng>(n: usize, p: f64, max_edges: usize, rng: &mut R) -> Option<Vec<Vec<usize>>> {
    let mut edges = 0usize;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut stamp = vec![usize::MAX; n];
    let mut queue = Vec::new();
    let mut candidates = Vec::new();
    for v in 1..n {
        stamp[v] = v;
        let ambassador = rng.gen_range(0..v);
        stamp[ambassador] = v;
        queue.clear();
        queue.push(ambassador);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            adj[x].push(v);
            adj[v].push(x);
            edges += 1;
            if edges > max_edges {
                return None;
            }
            let burn = geometric(rng, p);
            if burn == 0 {
                continue;
            }
            candidates.clear();
            candidates.extend(adj[x].iter().copied().filter(|&w| stamp[w] != v));
            let take = burn.min(candidates.len());
            for i in sample_indices(rng, candidates.len(), take) {
                let w = candidates[i];
                stamp[w] = v;
                queue.push(w);
            }
        }
    }
    Some(adj)
}

/// Ring lattice with `k / 2` neighbors per side, each lattice edge `(u, u+j)`
/// rewired with probability `p` to a uniform non-neighbor of `u`. Edge count
/// stays `n * k / 2`.
fn small_world<R: Rng>(n: usize, k: usize, p: f64, rng: &mut R) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(k + 4); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    if p == 0.0 {
        return adj;
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            if !rng.gen_bool(p) {
                continue;
            }
            let v = (u + j) % n;
            if !adj[u].contains(&v) || adj[u].len() >= n - 1 {
                continue;
            }
            let mut w = rng.gen_range(0..n);
            while w == u || adj[u].contains(&w) {
                w = rng.gen_range(0..n);
            }
            remove_value(&mut adj[u], v);
            remove_value(&mut adj[v], u);
            adj[u].push(w);
            adj[w].push(u);
        }
    }
    adj
}

fn remove_value(list: &mut Vec<usize>, value: usize) {
    if let Some(pos) = list.iter().position(|&x| x == value) {
        list.swap_remove(pos);
    }
}

/// Growth from a `(k+1)`-clique; every new node attaches to `k` distinct
/// earlier nodes, each chosen degree-proportionally with probability `beta`
/// and uniformly otherwise.
fn mixed_model<R: Rng>(n: usize, k: usize, beta: f64, rng: &mut R) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * k * n);
    let core = (k + 1).min(n);
    for u in 0..core {
        for v in u + 1..core {
            adj[u].push(v);
            adj[v].push(u);
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut chosen = Vec::with_capacity(k);
    for t in core..n {
        chosen.clear();
        while chosen.len() < k {
            let target =
                if rng.gen_bool(beta) { endpoints[rng.gen_range(0..endpoints.len())] } else { rng.gen_range(0..t) };
            if !chosen.contains(&target) {
                chosen.push(target);
            }
        }
        for &target in &chosen {
            adj[t].push(target);
            adj[target].push(t);
            endpoints.push(t);
            endpoints.push(target);
        }
    }
    adj
}

/// Bisection on a monotone parameter in `[lo, hi]` so that `measure(param)`
/// approaches `target`. Returns the midpoint of the final bracket.
pub fn bisect<M>(mut lo: f64, mut hi: f64, target: f64, iterations: usize, mut measure: M) -> f64
where
    M: FnMut(f64) -> f64,
{
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if measure(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Finds the forest-fire burn probability whose output at `nodes` nodes has
/// the requested average degree, averaging three seeds per probe.
///
/// The burn process is critical at `p = 0.5` (one ignition per burning node
/// on average); probes above it explode, so runs exceeding four times the
/// target edge count are cut short and treated as too dense.
pub fn calibrate_forest_fire(target_avg_degree: f64, nodes: usize, seed: u64) -> Result<f64> {
    GeneratorConfig::new(ModelParams::ForestFire { forward_burn: 0.5 }, nodes, seed).validate()?;
    let cap = (2.0 * target_avg_degree * nodes as f64) as usize;
    let p = bisect(0.3, 0.6, target_avg_degree, 20, |p| {
        let mut total = 0.0;
        for s in seed..seed + 3 {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            match forest_fire(nodes, p, cap, &mut rng) {
                Some(adj) => total += adj.iter().map(Vec::len).sum::<usize>() as f64 / nodes as f64,
                None => return f64::INFINITY,
            }
        }
        total / 3.0
    });
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::connected_components;

    fn sw(n: usize, k: usize, p: f64, seed: u64) -> Graph {
        generate(&GeneratorConfig::new(ModelParams::SmallWorld { ring_degree: k, rewire: p }, n, seed)).unwrap()
    }

    #[test]
    fn unrewired_ring_is_regular_cycle() {
        let g = sw(10, 2, 0.0, 1);
        assert_eq!(g.edge_count(), 10);
        assert!((0..10).all(|v| g.degree(v) == 2));
        assert!(g.has_edge(9, 0));
        let lattice = sw(50, 6, 0.0, 1);
        assert!((0..50).all(|v| lattice.degree(v) == 6));
    }

    #[test]
    fn rewiring_preserves_edge_count() {
        for seed in 0..5 {
            assert_eq!(sw(2_000, 16, 0.3, seed).edge_count(), 16_000);
        }
    }

    #[test]
    fn forest_fire_is_connected_and_deterministic() {
        let cfg = GeneratorConfig::new(ModelParams::forest_fire(), 3_000, 5);
        let a = generate(&cfg).unwrap();
        assert_eq!(a, generate(&cfg).unwrap());
        assert_eq!(connected_components(&a).count(), 1);
    }

    #[test]
    fn calibration_reaches_target_degree() {
        let p = calibrate_forest_fire(6.0, 3_000, 0).unwrap();
        let avg: f64 = (0..3)
            .map(|seed| {
                let cfg = GeneratorConfig::new(ModelParams::ForestFire { forward_burn: p }, 3_000, seed);
                2.0 * generate(&cfg).unwrap().edge_count() as f64 / 3_000.0
            })
            .sum::<f64>()
            / 3.0;
        assert!((avg - 6.0).abs() < 0.6, "p = {p}, average degree {avg}");
    }

    #[test]
    fn mixed_model_edge_count_and_tail() {
        let expected = 36 + 8 * (1000 - 9);
        let mut mm_max = 0;
        let mut sw_max = 0;
        for seed in 0..10 {
            let mm = generate(&GeneratorConfig::new(ModelParams::mixed_model(), 1000, seed)).unwrap();
            let m = mm.edge_count() as f64;
            assert!((m - expected as f64).abs() <= 0.1 * expected as f64);
            mm_max += mm.max_degree();
            sw_max += sw(1000, 16, DEFAULT_REWIRE, seed).max_degree();
        }
        assert!(mm_max > sw_max, "mm {mm_max} vs sw {sw_max}");
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let cases = [
            GeneratorConfig::new(ModelParams::SmallWorld { ring_degree: 3, rewire: 0.1 }, 100, 0),
            GeneratorConfig::new(ModelParams::SmallWorld { ring_degree: 4, rewire: 1.5 }, 100, 0),
            GeneratorConfig::new(ModelParams::SmallWorld { ring_degree: 16, rewire: 0.1 }, 16, 0),
            GeneratorConfig::new(ModelParams::ForestFire { forward_burn: 1.0 }, 100, 0),
            GeneratorConfig::new(ModelParams::ForestFire { forward_burn: 0.3 }, 2, 0),
            GeneratorConfig::new(ModelParams::MixedModel { edges_per_node: 0, preferential: 0.5 }, 100, 0),
            GeneratorConfig::new(ModelParams::MixedModel { edges_per_node: 2, preferential: -0.1 }, 100, 0),
        ];
        for cfg in cases {
            assert!(matches!(generate(&cfg), Err(Error::Config(_))), "{cfg:?}");
        }
    }

    #[test]
    fn config_json_shape() {
        let cfg: GeneratorConfig =
            serde_json::from_str(r#"{"model":"sw","nodes":100,"seed":3,"ring_degree":4,"rewire":0.2}"#).unwrap();
        assert_eq!(cfg.params, ModelParams::SmallWorld { ring_degree: 4, rewire: 0.2 });
    }

    #[test]
    fn bisection_finds_root_of_monotone_map() {
        let x = bisect(0.0, 10.0, 9.0, 60, |x| x * x);
        assert!((x - 3.0).abs() < 1e-9);
    }
}
