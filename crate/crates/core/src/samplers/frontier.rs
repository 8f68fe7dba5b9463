use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::collector::Collector;
use super::{finalize_with, Sample, SamplerConfig, Step};
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// Frontier sampling: `m` dependent walkers; each step moves the walker at
/// `v` with probability `d_v / sum_u d_u` along a uniform incident edge.
pub fn frontier_sample(g: &Graph, cfg: &SamplerConfig) -> Result<Sample> {
    let n = g.node_count();
    let budget = cfg.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = Collector::new(g, budget, cfg);
    c.track_components();

    let mut walkers: Vec<NodeId> = sample_indices(&mut rng, n, cfg.params.walkers).into_vec();
    if let Some(s) = cfg.start {
        match walkers.iter().position(|&w| w == s) {
            Some(i) => walkers.swap(0, i),
            None => walkers[0] = s,
        }
    }
    for &w in &walkers {
        place(&mut c, w);
    }
    let mut total: usize = walkers.iter().map(|&w| g.degree(w)).sum();

    while !c.full() {
        if total == 0 {
            // Every walker sits on a sampled isolated node.
            total = restart(&mut c, &mut rng, &mut walkers, 0, total);
            continue;
        }
        let mut r = rng.gen_range(0..total);
        let mut i = 0;
        while r >= g.degree(walkers[i]) {
            r -= g.degree(walkers[i]);
            i += 1;
        }
        if c.tracing() {
            c.record_draw(walkers.iter().map(|&w| g.degree(w)).collect(), i);
        }
        let v = walkers[i];
        if c.component_exhausted(v) {
            total = restart(&mut c, &mut rng, &mut walkers, i, total);
            continue;
        }
        let w = g.neighbors(v)[rng.gen_range(0..g.degree(v))];
        c.log(Step::Edge { from: v, to: w });
        c.add(v);
        c.add(w);
        c.add_edge(v, w);
        walkers[i] = w;
        total = total + g.degree(w) - g.degree(v);
    }
    let raw = c.finish();
    finalize_with(g, raw, cfg, cfg.mode, budget)
}

/// A walker start enters the sample only once it walks, unless it has no
/// edge to walk along.
fn place(c: &mut Collector<'_>, w: NodeId) {
    c.log(Step::Seed { node: w });
    if c.g.degree(w) == 0 {
        c.add(w);
    }
}

fn restart(c: &mut Collector<'_>, rng: &mut ChaCha8Rng, walkers: &mut [NodeId], i: usize, total: usize) -> usize {
    let fresh = c.draw_unsampled(rng).expect("budget not met, so unsampled nodes remain");
    c.telemetry.restarts += 1;
    let old = walkers[i];
    walkers[i] = fresh;
    place(c, fresh);
    total + c.g.degree(fresh) - c.g.degree(old)
}
