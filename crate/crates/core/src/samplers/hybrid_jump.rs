use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::collector::Collector;
use super::{finalize_with, Sample, SamplerConfig, Step};
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// What one walk step did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WalkStep {
    /// `(from, to, accepted)`; `None` at a node without edges.
    pub proposal: Option<(NodeId, NodeId, bool)>,
    /// `(anchor, to)` when a jump followed the proposal.
    pub jump: Option<(NodeId, NodeId)>,
}

/// Metropolis–Hastings walk with random jumps into the depth-limited BFS
/// neighbourhood of the last jump anchor.
#[derive(Debug, Clone)]
pub struct HybridWalk<'g> {
    g: &'g Graph,
    current: NodeId,
    alpha: f64,
    depth: usize,
    anchor: NodeId,
    jump_list: Vec<NodeId>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'g> HybridWalk<'g> {
    pub fn new(g: &'g Graph, start: NodeId, alpha: f64, depth: usize) -> Self {
        let mut walk = Self {
            g,
            current: start,
            alpha,
            depth,
            anchor: start,
            jump_list: Vec::new(),
            stamp: vec![0; g.node_count()],
            epoch: 0,
        };
        walk.reanchor(start);
        walk
    }

    pub fn current(&self) -> NodeId {
        self.current
    }

    pub fn anchor(&self) -> NodeId {
        self.anchor
    }

    pub fn jump_list(&self) -> &[NodeId] {
        &self.jump_list
    }

    /// Moves to `v` without a step and rebuilds the jump list there.
    pub fn teleport(&mut self, v: NodeId) {
        self.current = v;
        self.reanchor(v);
    }

    pub fn step<R: Rng>(&mut self, rng: &mut R) -> WalkStep {
        let mut out = WalkStep::default();
        let v = self.current;
        let dv = self.g.degree(v);
        if dv > 0 {
            let w = self.g.neighbors(v)[rng.gen_range(0..dv)];
            let dw = self.g.degree(w);
            let accepted = dv >= dw || rng.gen_bool(dv as f64 / dw as f64);
            if accepted {
                self.current = w;
            }
            out.proposal = Some((v, w, accepted));
        }
        if self.alpha > 0.0 && !self.jump_list.is_empty() && rng.gen_bool(self.alpha) {
            let to = self.jump_list[rng.gen_range(0..self.jump_list.len())];
            out.jump = Some((self.anchor, to));
            self.teleport(to);
        }
        out
    }

    /// Unique nodes at distance `1..=depth` from `anchor`, in BFS order.
    fn reanchor(&mut self, anchor: NodeId) {
        self.anchor = anchor;
        self.jump_list.clear();
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.stamp[anchor] = self.epoch;
        let mut level_start = 0;
        let mut frontier_end;
        // Level 1 seeds from the anchor itself.
        for &u in self.g.neighbors(anchor) {
            self.stamp[u] = self.epoch;
            self.jump_list.push(u);
        }
        for _ in 1..self.depth {
            frontier_end = self.jump_list.len();
            for i in level_start..frontier_end {
                let x = self.jump_list[i];
                for &u in self.g.neighbors(x) {
                    if self.stamp[u] != self.epoch {
                        self.stamp[u] = self.epoch;
                        self.jump_list.push(u);
                    }
                }
            }
            level_start = frontier_end;
        }
    }
}

/// Mean degree over `probes` uniform node draws (with replacement).
fn estimate_degree<R: Rng>(g: &Graph, probes: usize, rng: &mut R) -> f64 {
    let n = g.node_count();
    if probes == 0 {
        return 2.0 * g.edge_count() as f64 / n as f64;
    }
    let total: usize = (0..probes).map(|_| g.degree(rng.gen_range(0..n))).sum();
    total as f64 / probes as f64
}

/// Hybrid jump sampling: a Metropolis–Hastings walk accepting `v -> w` with
/// probability `min(1, d_v / d_w)`, jumping with probability `alpha` after
/// every step. Visited nodes and accepted edges form the sample.
pub fn hybrid_jump_sample(g: &Graph, cfg: &SamplerConfig) -> Result<Sample> {
    let n = g.node_count();
    let budget = cfg.validate(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = Collector::new(g, budget, cfg);
    c.track_components();

    let alpha = match cfg.params.jump_probability {
        Some(a) => a,
        None => {
            let d = estimate_degree(g, cfg.params.degree_probes, &mut rng);
            if d > 0.0 {
                (1.0 / d).min(1.0)
            } else {
                1.0
            }
        }
    };
    c.telemetry.jump_probability = Some(alpha);

    let start = cfg.start.unwrap_or_else(|| rng.gen_range(0..n));
    c.log(Step::Seed { node: start });
    c.add(start);
    let mut walk = HybridWalk::new(g, start, alpha, cfg.params.jump_depth);

    while !c.full() {
        if c.component_exhausted(walk.current()) {
            let fresh = c.draw_unsampled(&mut rng).expect("budget not met, so unsampled nodes remain");
            c.telemetry.restarts += 1;
            c.log(Step::Seed { node: fresh });
            c.add(fresh);
            walk.teleport(fresh);
            continue;
        }
        let step = walk.step(&mut rng);
        if let Some((from, to, accepted)) = step.proposal {
            c.telemetry.proposals += 1;
            c.log(Step::Propose { from, to, accepted });
            if accepted {
                c.telemetry.accepted += 1;
                c.add(to);
                c.add_edge(from, to);
            }
        }
        if let Some((anchor, to)) = step.jump {
            c.telemetry.jumps += 1;
            c.log(Step::Jump { anchor, to });
            c.add(to);
        }
    }
    let raw = c.finish();
    finalize_with(g, raw, cfg, cfg.mode, budget)
}
