use std::cmp::Reverse;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::collector::Collector;
use super::{finalize_with, Sample, SamplerConfig, Step};
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// Rank degree sampling: a seed picked uniformly from the current seed set
/// promotes its `k = max(1, ceil(rho * r))` highest-degree unsampled
/// neighbours (of `r` ranked), which become the next seed set.
pub fn rank_degree_sample(g: &Graph, cfg: &SamplerConfig) -> Result<Sample> {
    let n = g.node_count();
    let budget = cfg.validate(n)?;
    let rho = cfg.params.rd_top_fraction;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = Collector::new(g, budget, cfg);

    let mut seeds: Vec<NodeId> = sample_indices(&mut rng, n, cfg.params.rd_seeds.min(n)).into_vec();
    if let Some(s) = cfg.start {
        seeds.retain(|&v| v != s);
        seeds.truncate(cfg.params.rd_seeds.saturating_sub(1));
        seeds.insert(0, s);
    }
    for &s in &seeds {
        c.log(Step::Seed { node: s });
    }
    let mut ranked: Vec<NodeId> = Vec::new();

    while !c.full() {
        if seeds.is_empty() {
            let fresh = c.draw_unsampled(&mut rng).expect("budget not met, so unsampled nodes remain");
            c.telemetry.restarts += 1;
            c.log(Step::Seed { node: fresh });
            seeds.push(fresh);
        }
        // With a fixed start the first pick is the start itself.
        let i = if cfg.start.is_some() && c.len() == 0 { 0 } else { rng.gen_range(0..seeds.len()) };
        let seed = seeds[i];
        c.add(seed);

        ranked.clear();
        ranked.extend(g.neighbors(seed).iter().copied().filter(|&u| !c.contains(u)));
        if ranked.is_empty() {
            seeds.swap_remove(i);
            continue;
        }
        ranked.sort_unstable_by_key(|&u| (Reverse(g.degree(u)), u));
        let k = ((rho * ranked.len() as f64).ceil() as usize).clamp(1, ranked.len());
        ranked.truncate(k);
        for &u in &ranked {
            c.log(Step::Edge { from: seed, to: u });
            c.add(u);
            c.add_edge(seed, u);
        }
        seeds.clear();
        seeds.extend_from_slice(&ranked);
    }
    let raw = c.finish();
    finalize_with(g, raw, cfg, cfg.mode, budget)
}
