use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use super::{FinalizeMode, Method, Sample, Step};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("sample carries no step log")]
    NoLog,
    #[error("step {index}: {message}")]
    Step { index: usize, message: String },
    #[error("{0}")]
    Sample(String),
}

/// Replays the step log of a traced sample against `g`: every step must
/// start from a node already reached, every traversed edge must exist,
/// jumps must stay within the configured BFS depth, and the final node and
/// edge sets must be explained by the log.
pub fn replay(g: &Graph, sample: &Sample) -> Result<(), ReplayError> {
    let log = sample.telemetry.log.as_ref().ok_or(ReplayError::NoLog)?;
    let n = g.node_count();
    let mut reached = vec![false; n];
    let mut traversed: HashSet<(NodeId, NodeId)> = HashSet::new();
    let fail = |index: usize, message: String| Err(ReplayError::Step { index, message });

    for (index, &step) in log.iter().enumerate() {
        let in_range = |v: NodeId| v < n;
        match step {
            Step::Seed { node } => {
                if !in_range(node) {
                    return fail(index, format!("seed {node} out of range"));
                }
                reached[node] = true;
            }
            Step::Edge { from, to } | Step::Propose { from, to, .. } => {
                if !in_range(from) || !in_range(to) {
                    return fail(index, format!("node out of range in {from}-{to}"));
                }
                if !reached[from] {
                    return fail(index, format!("step leaves {from}, which was never reached"));
                }
                if !g.has_edge(from, to) {
                    return fail(index, format!("{from}-{to} is not an edge"));
                }
                if !matches!(step, Step::Propose { accepted: false, .. }) {
                    reached[to] = true;
                    traversed.insert((from.min(to), from.max(to)));
                }
            }
            Step::Jump { anchor, to } => {
                if !in_range(anchor) || !in_range(to) {
                    return fail(index, format!("node out of range in jump {anchor}->{to}"));
                }
                if !reached[anchor] {
                    return fail(index, format!("jump anchor {anchor} was never reached"));
                }
                let depth = sample.config.params.jump_depth;
                match hop_distance(g, anchor, to, depth) {
                    Some(d) if d >= 1 => reached[to] = true,
                    _ => return fail(index, format!("jump {anchor}->{to} exceeds depth {depth}")),
                }
            }
        }
    }

    if let Some(v) = sample.nodes.iter().find(|&v| !reached[v]) {
        return Err(ReplayError::Sample(format!("sampled node {v} never reached by the log")));
    }
    for &(u, v) in &sample.edges {
        if !g.has_edge(u, v) || !sample.nodes.contains(u) || !sample.nodes.contains(v) {
            return Err(ReplayError::Sample(format!("edge {u}-{v} is not a sampled graph edge")));
        }
        if sample.mode == FinalizeMode::Collected && !traversed.contains(&(u, v)) {
            return Err(ReplayError::Sample(format!("collected edge {u}-{v} was never traversed")));
        }
    }
    if sample.mode == FinalizeMode::Collected && sample.config.method == Method::Ls {
        return Err(ReplayError::Sample("list samples are always induced".into()));
    }
    Ok(())
}

/// Hop distance from `a` to `b` if it is at most `limit`.
fn hop_distance(g: &Graph, a: NodeId, b: NodeId, limit: usize) -> Option<usize> {
    if a == b {
        return Some(0);
    }
    let mut dist = HashMap::from([(a, 0usize)]);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == limit {
            continue;
        }
        for &y in g.neighbors(x) {
            if let Entry::Vacant(e) = dist.entry(y) {
                if y == b {
                    return Some(d + 1);
                }
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    None
}
