//! Triangle-based statistics: local, average and global clustering.

use serde::{Deserialize, Serialize};

use crate::distribution::{clustering_bin, Distribution, DistributionKind, CLUSTERING_BINS};
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::scalar::{ratio, Scalar};

/// How nodes of degree below two (where the local coefficient is 0/0) enter
/// averages and distributions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowDegreeRule {
    /// Count them with coefficient zero.
    #[default]
    Zero,
    /// Leave them out.
    Exclude,
}

/// Number of triangles through every node.
///
/// Edges are oriented from lower to higher `(degree, id)` rank so each
/// triangle is enumerated exactly once from its lowest-ranked corner.
pub fn triangles_per_node(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let higher = |a: NodeId, b: NodeId| (g.degree(a), a) < (g.degree(b), b);
    let mut offsets = Vec::with_capacity(n + 1);
    let mut forward = Vec::with_capacity(g.edge_count());
    offsets.push(0);
    for u in 0..n {
        forward.extend(g.neighbors(u).iter().copied().filter(|&w| higher(u, w)));
        offsets.push(forward.len());
    }
    let out = |u: NodeId| &forward[offsets[u]..offsets[u + 1]];

    let mut triangles = vec![0u64; n];
    let mut mark = vec![usize::MAX; n];
    for u in 0..n {
        for &w in out(u) {
            mark[w] = u;
        }
        for &v in out(u) {
            for &w in out(v) {
                if mark[w] == u {
                    triangles[u] += 1;
                    triangles[v] += 1;
                    triangles[w] += 1;
                }
            }
        }
    }
    triangles
}

pub fn triangle_count(g: &Graph) -> u64 {
    triangles_per_node(g).iter().sum::<u64>() / 3
}

fn coefficient<F: Scalar>(triangles: u64, degree: usize) -> F {
    if degree < 2 {
        F::zero()
    } else {
        ratio(2 * triangles as u128, (degree * (degree - 1)) as u128)
    }
}

/// `2 e_v / (d_v (d_v - 1))`, zero when `d_v <= 1`.
pub fn local_clustering<F: Scalar>(g: &Graph, v: NodeId) -> Result<F> {
    let adj = g.try_neighbors(v)?;
    let mut links = 0u64;
    for &w in adj {
        links += sorted_intersection(adj, g.neighbors(w)) as u64;
    }
    Ok(coefficient(links / 2, adj.len()))
}

fn sorted_intersection(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Local coefficients of all nodes; `None` marks nodes excluded by `rule`.
pub fn local_clustering_all<F: Scalar>(g: &Graph, rule: LowDegreeRule) -> Vec<Option<F>> {
    triangles_per_node(g)
        .into_iter()
        .enumerate()
        .map(|(v, t)| {
            let d = g.degree(v);
            (d >= 2 || rule == LowDegreeRule::Zero).then(|| coefficient(t, d))
        })
        .collect()
}

pub fn average_clustering<F: Scalar>(g: &Graph, rule: LowDegreeRule) -> F {
    mean_of_included(&local_clustering_all(g, rule))
}

fn mean_of_included<F: Scalar>(values: &[Option<F>]) -> F {
    let (sum, count) = values.iter().flatten().fold((F::zero(), 0usize), |(s, c), &x| (s + x, c + 1));
    if count == 0 {
        F::zero()
    } else {
        sum / F::from_count(count)
    }
}

/// Local coefficients histogrammed into 100 uniform bins over `[0, 1]`.
/// `None` when `rule` excludes every node.
pub fn clustering_distribution<F: Scalar>(g: &Graph, rule: LowDegreeRule) -> Option<Distribution<F>> {
    distribution_of(&local_clustering_all::<F>(g, rule))
}

fn distribution_of<F: Scalar>(values: &[Option<F>]) -> Option<Distribution<F>> {
    let mut counts = vec![0u64; CLUSTERING_BINS];
    for c in values.iter().flatten() {
        counts[clustering_bin(c.to_f64_lossy()) as usize] += 1;
    }
    let pairs = counts.into_iter().enumerate().map(|(b, c)| (b as u64, c));
    Distribution::from_counts(DistributionKind::Clustering, pairs).ok()
}

/// Closed-triplet ratio `3T / sum_v C(d_v, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalClustering<F> {
    pub value: F,
    /// False when the graph has no path of length two; `value` is then 0.
    pub defined: bool,
}

pub fn global_clustering<F: Scalar>(g: &Graph) -> GlobalClustering<F> {
    let triangles = triangle_count(g);
    global_from_parts(g, triangles)
}

fn global_from_parts<F: Scalar>(g: &Graph, triangles: u64) -> GlobalClustering<F> {
    let triplets: u128 = g.degrees().map(|d| (d as u128) * (d as u128).saturating_sub(1) / 2).sum();
    if triplets == 0 {
        GlobalClustering { value: F::zero(), defined: false }
    } else {
        GlobalClustering { value: ratio(3 * triangles as u128, triplets), defined: true }
    }
}

/// Everything clustering-related from a single triangle pass.
pub(crate) struct ClusteringSummary<F> {
    pub average: F,
    pub distribution: Option<Distribution<F>>,
    pub global: GlobalClustering<F>,
}

pub(crate) fn clustering_summary<F: Scalar>(g: &Graph, rule: LowDegreeRule) -> ClusteringSummary<F> {
    let triangles = triangles_per_node(g);
    let total = triangles.iter().sum::<u64>() / 3;
    let locals: Vec<Option<F>> = triangles
        .iter()
        .enumerate()
        .map(|(v, &t)| {
            let d = g.degree(v);
            (d >= 2 || rule == LowDegreeRule::Zero).then(|| coefficient(t, d))
        })
        .collect();
    ClusteringSummary {
        average: mean_of_included(&locals),
        distribution: distribution_of(&locals),
        global: global_from_parts(g, total),
    }
}
