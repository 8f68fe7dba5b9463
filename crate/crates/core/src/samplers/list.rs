use std::cmp::Reverse;
use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::collector::Collector;
use super::{finalize_with, FinalizeMode, Sample, SamplerConfig, Step};
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// List sampling: keep every unsampled neighbour of the sample on a
/// candidate list and repeatedly take the one of highest degree. The result
/// is always the induced subgraph, whatever `cfg.mode` says.
pub fn list_sample(g: &Graph, cfg: &SamplerConfig) -> Result<Sample> {
    let budget = cfg.validate(g.node_count())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = Collector::new(g, budget, cfg);
    let mut candidates: BTreeSet<(Reverse<usize>, NodeId)> = BTreeSet::new();
    // Sampled node through which each candidate was first discovered.
    let mut parent: Vec<Option<NodeId>> = vec![None; g.node_count()];

    let mut next_seed = cfg.start;
    while !c.full() {
        let v = match candidates.pop_first() {
            Some((_, v)) => {
                let from = parent[v].expect("candidate has a parent");
                c.log(Step::Edge { from, to: v });
                c.add_edge(from, v);
                v
            }
            None => {
                let seed = match next_seed.take() {
                    Some(s) => s,
                    None => {
                        c.telemetry.restarts += usize::from(c.len() > 0);
                        c.draw_unsampled(&mut rng).expect("budget not met, so unsampled nodes remain")
                    }
                };
                c.log(Step::Seed { node: seed });
                seed
            }
        };
        c.add(v);
        for &u in g.neighbors(v) {
            if !c.contains(u) && parent[u].is_none() {
                parent[u] = Some(v);
                candidates.insert((Reverse(g.degree(u)), u));
            }
        }
    }
    let raw = c.finish();
    finalize_with(g, raw, cfg, FinalizeMode::Induced, budget)
}
