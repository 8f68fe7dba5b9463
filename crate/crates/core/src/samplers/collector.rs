use rand::Rng;

use super::{RawSample, SamplerConfig, Step, Telemetry, WalkerDraw};
use crate::graph::{connected_components, Graph, NodeId};

/// Unsampled nodes with O(1) removal and uniform draws.
struct Pool {
    items: Vec<NodeId>,
    slot: Vec<usize>,
}

impl Pool {
    fn new(n: usize) -> Self {
        Self { items: (0..n).collect(), slot: (0..n).collect() }
    }

    fn remove(&mut self, v: NodeId) {
        let i = self.slot[v];
        let last = *self.items.last().expect("removing from empty pool");
        self.items.swap_remove(i);
        if last != v {
            self.slot[last] = i;
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> Option<NodeId> {
        (!self.items.is_empty()).then(|| self.items[rng.gen_range(0..self.items.len())])
    }
}

/// Sampler state shared by all methods: membership, insertion order,
/// traversed edges, telemetry, and per-component counts of unsampled nodes
/// so walks can tell when their component has nothing left to give.
pub(crate) struct Collector<'g> {
    pub g: &'g Graph,
    pub budget: usize,
    in_sample: Vec<bool>,
    order: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    pool: Pool,
    component: Option<(Vec<usize>, Vec<usize>)>,
    pub telemetry: Telemetry,
}

impl<'g> Collector<'g> {
    pub fn new(g: &'g Graph, budget: usize, cfg: &SamplerConfig) -> Self {
        let n = g.node_count();
        let mut telemetry = Telemetry::default();
        if cfg.trace {
            telemetry.log = Some(Vec::new());
        }
        Self {
            g,
            budget,
            in_sample: vec![false; n],
            order: Vec::with_capacity(budget + 1),
            edges: Vec::new(),
            pool: Pool::new(n),
            component: None,
            telemetry,
        }
    }

    /// Enables [`Collector::component_exhausted`].
    pub fn track_components(&mut self) {
        let comps = connected_components(self.g);
        let mut left = comps.sizes.clone();
        for &v in &self.order {
            left[comps.labels[v]] -= 1;
        }
        self.component = Some((comps.labels, left));
    }

    pub fn full(&self) -> bool {
        self.order.len() >= self.budget
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.in_sample[v]
    }

    /// Adds `v` to the sample; false if it was already there.
    pub fn add(&mut self, v: NodeId) -> bool {
        if self.in_sample[v] {
            return false;
        }
        self.in_sample[v] = true;
        self.order.push(v);
        self.pool.remove(v);
        if let Some((labels, left)) = &mut self.component {
            left[labels[v]] -= 1;
        }
        true
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) {
        self.edges.push((u, v));
    }

    /// True when every node of `v`'s component is already sampled.
    pub fn component_exhausted(&self, v: NodeId) -> bool {
        let (labels, left) = self.component.as_ref().expect("component tracking not enabled");
        left[labels[v]] == 0
    }

    /// Uniform draw among unsampled nodes.
    pub fn draw_unsampled<R: Rng>(&self, rng: &mut R) -> Option<NodeId> {
        self.pool.draw(rng)
    }

    pub fn log(&mut self, step: Step) {
        self.telemetry.steps += 1;
        if let Some(log) = &mut self.telemetry.log {
            log.push(step);
        }
    }

    pub fn record_draw(&mut self, degrees: Vec<usize>, chosen: usize) {
        self.telemetry.walker_draws.get_or_insert_with(Vec::new).push(WalkerDraw { degrees, chosen });
    }

    pub fn tracing(&self) -> bool {
        self.telemetry.log.is_some()
    }

    pub fn finish(self) -> RawSample {
        RawSample { order: self.order, edges: self.edges, telemetry: self.telemetry }
    }
}
