use std::cmp::Reverse;
use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::collector::Collector;
use super::{finalize_with, Sample, SamplerConfig, Step};
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// Snowball expansion sampling: grow from one seed, always adding the
/// frontier node with the most neighbours outside `S ∪ N(S)`.
pub fn expansion_sample(g: &Graph, cfg: &SamplerConfig) -> Result<Sample> {
    let budget = cfg.validate(g.node_count())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = Collector::new(g, budget, cfg);
    let mut state = Frontier::new(g);

    let mut next_seed = cfg.start;
    while !c.full() {
        let Some((_, v)) = state.candidates.pop_first() else {
            let seed = match next_seed.take() {
                Some(s) => s,
                None => {
                    c.telemetry.restarts += usize::from(c.len() > 0);
                    c.draw_unsampled(&mut rng).expect("budget not met, so unsampled nodes remain")
                }
            };
            c.log(Step::Seed { node: seed });
            c.add(seed);
            state.absorb(seed);
            continue;
        };
        // Any sampled neighbour explains how v was reached.
        let from =
            g.neighbors(v).iter().copied().find(|&u| c.contains(u)).expect("frontier node has a sampled neighbour");
        c.log(Step::Edge { from, to: v });
        c.add(v);
        c.add_edge(from, v);
        state.absorb(v);
    }
    let raw = c.finish();
    finalize_with(g, raw, cfg, cfg.mode, budget)
}

/// `uncovered[v]` counts neighbours of `v` outside `S ∪ N(S)`; candidates
/// are `N(S) \ S` ordered by that count, largest first, then by id.
struct Frontier<'g> {
    g: &'g Graph,
    uncovered: Vec<usize>,
    covered: Vec<bool>,
    in_s: Vec<bool>,
    candidates: BTreeSet<(Reverse<usize>, NodeId)>,
}

impl<'g> Frontier<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.node_count();
        Self {
            g,
            uncovered: g.degrees().collect(),
            covered: vec![false; n],
            in_s: vec![false; n],
            candidates: BTreeSet::new(),
        }
    }

    /// Moves `v` into `S`; its neighbours join the covered set.
    fn absorb(&mut self, v: NodeId) {
        self.in_s[v] = true;
        self.candidates.remove(&(Reverse(self.uncovered[v]), v));
        self.cover(v);
        for &u in self.g.neighbors(v) {
            if self.cover(u) {
                self.candidates.insert((Reverse(self.uncovered[u]), u));
            }
        }
    }

    fn cover(&mut self, u: NodeId) -> bool {
        if self.covered[u] {
            return false;
        }
        self.covered[u] = true;
        for &y in self.g.neighbors(u) {
            let was = self.uncovered[y];
            self.uncovered[y] = was - 1;
            if !self.in_s[y] && self.covered[y] && self.candidates.remove(&(Reverse(was), y)) {
                self.candidates.insert((Reverse(was - 1), y));
            }
        }
        true
    }
}

/// `X(S) = |N(S)| / |S|` with `N(S)` the neighbours outside `S`.
pub fn expansion_factor(g: &Graph, nodes: &[NodeId]) -> f64 {
    let mut inside = vec![false; g.node_count()];
    for &v in nodes {
        inside[v] = true;
    }
    let mut seen = vec![false; g.node_count()];
    let mut boundary = 0usize;
    for &v in nodes {
        for &u in g.neighbors(v) {
            if !inside[u] && !seen[u] {
                seen[u] = true;
                boundary += 1;
            }
        }
    }
    boundary as f64 / nodes.len() as f64
}
