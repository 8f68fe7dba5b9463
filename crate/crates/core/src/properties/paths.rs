//! Shortest-path lengths by breadth-first search within the largest
//! connected component.

use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::{Distribution, DistributionKind};
use crate::error::{Error, Result};
use crate::graph::{largest_connected_component, Graph, NodeId};
use crate::scalar::{ratio, Scalar};

pub const DEFAULT_PATH_SOURCES: usize = 256;
pub const EXACT_PATH_THRESHOLD: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum PathMode {
    /// BFS from every node of the component.
    Exact,
    /// BFS from `sources` distinct uniform component nodes.
    Sampled { sources: usize, seed: u64 },
    /// Exact when the graph has at most `exact_threshold` nodes, sampled otherwise.
    Auto { sources: usize, seed: u64, exact_threshold: usize },
}

impl Default for PathMode {
    fn default() -> Self {
        Self::Auto { sources: DEFAULT_PATH_SOURCES, seed: 0, exact_threshold: EXACT_PATH_THRESHOLD }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathLengthStats<F> {
    /// Mean hop count over ordered reachable pairs of distinct nodes.
    pub average: F,
    pub distribution: Distribution<F>,
    pub exact: bool,
    pub sources: usize,
    pub component_nodes: usize,
    /// Share of the graph's nodes inside the component used.
    pub component_fraction: F,
}

pub fn path_length_stats<F: Scalar>(g: &Graph, mode: PathMode) -> Result<PathLengthStats<F>> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let component = largest_connected_component(g);
    let members = component.as_slice();

    let sources: Vec<NodeId> = match mode {
        PathMode::Exact => members.to_vec(),
        PathMode::Auto { exact_threshold, .. } if g.node_count() <= exact_threshold => members.to_vec(),
        PathMode::Sampled { sources, seed } | PathMode::Auto { sources, seed, .. } => {
            if sources >= members.len() {
                members.to_vec()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut picked: Vec<NodeId> =
                    sample_indices(&mut rng, members.len(), sources).into_iter().map(|i| members[i]).collect();
                picked.sort_unstable();
                picked
            }
        }
    };
    let exact = sources.len() == members.len();

    let histogram = hop_histogram(g, &sources);
    let pairs: u128 = histogram.iter().map(|&c| c as u128).sum();
    let total: u128 = histogram.iter().enumerate().map(|(h, &c)| h as u128 * c as u128).sum();
    let distribution = Distribution::from_counts(
        DistributionKind::PathLength,
        histogram.iter().enumerate().map(|(h, &c)| (h as u64, c)),
    )?;
    Ok(PathLengthStats {
        average: ratio(total, pairs),
        distribution,
        exact,
        sources: sources.len(),
        component_nodes: members.len(),
        component_fraction: ratio(members.len() as u128, g.node_count() as u128),
    })
}

pub fn average_path_length<F: Scalar>(g: &Graph, mode: PathMode) -> Result<F> {
    Ok(path_length_stats(g, mode)?.average)
}

/// Counts of targets at each hop distance `>= 1`, summed over `sources`.
fn hop_histogram(g: &Graph, sources: &[NodeId]) -> Vec<u64> {
    let n = g.node_count();
    sources
        .par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::with_capacity(n)),
            |(dist, queue), &s| {
                let mut hist: Vec<u64> = Vec::new();
                queue.clear();
                dist[s] = 0;
                queue.push(s);
                let mut head = 0;
                while head < queue.len() {
                    let u = queue[head];
                    head += 1;
                    let du = dist[u];
                    for &w in g.neighbors(u) {
                        if dist[w] == u32::MAX {
                            dist[w] = du + 1;
                            queue.push(w);
                            let h = (du + 1) as usize;
                            if hist.len() <= h {
                                hist.resize(h + 1, 0);
                            }
                            hist[h] += 1;
                        }
                    }
                }
                for &u in queue.iter() {
                    dist[u] = u32::MAX;
                }
                hist
            },
        )
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    fn floyd_warshall_average(g: &Graph) -> f64 {
        let n = g.node_count();
        let inf = u32::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for u in 0..n {
            d[u][u] = 0;
            for &w in g.neighbors(u) {
                d[u][w] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        let (mut sum, mut count) = (0u64, 0u64);
        for i in 0..n {
            for j in 0..n {
                if i != j && d[i][j] < inf {
                    sum += d[i][j] as u64;
                    count += 1;
                }
            }
        }
        sum as f64 / count as f64
    }

    #[test]
    fn path_of_three() {
        let s = path_length_stats::<f64>(&path(3), PathMode::Exact).unwrap();
        assert!((s.average - 8.0 / 6.0).abs() < 1e-15);
        assert_eq!(s.distribution.support(), &[1, 2]);
        assert!(s.exact);
    }

    #[test]
    fn ten_cycle_matches_floyd_warshall() {
        let g = cycle(10);
        let got: f64 = average_path_length(&g, PathMode::Exact).unwrap();
        assert!((got - 25.0 / 9.0).abs() < 1e-12);
        assert!((got - floyd_warshall_average(&g)).abs() < 1e-12);
    }

    #[test]
    fn restricted_to_largest_component() {
        // Path of four plus a separate edge.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (4, 5)]).unwrap();
        let s = path_length_stats::<f64>(&g, PathMode::Exact).unwrap();
        assert_eq!(s.component_nodes, 4);
        assert!((s.component_fraction - 4.0 / 6.0).abs() < 1e-15);
        assert!((s.average - 20.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn no_edges_is_an_error() {
        assert!(matches!(average_path_length::<f64>(&Graph::empty(3), PathMode::Exact), Err(Error::NoEdges)));
    }

    #[test]
    fn sampled_mode_is_deterministic_and_close() {
        let g = gnp(600, 0.02, 1);
        let exact: f64 = average_path_length(&g, PathMode::Exact).unwrap();
        let mode = PathMode::Sampled { sources: 200, seed: 9 };
        let a = path_length_stats::<f64>(&g, mode).unwrap();
        assert!(!a.exact);
        assert_eq!(a, path_length_stats(&g, mode).unwrap());
        assert!((a.average - exact).abs() / exact < 0.02);
    }

    #[test]
    fn auto_switches_on_size() {
        let g = gnp(100, 0.1, 2);
        let small = PathMode::Auto { sources: 10, seed: 0, exact_threshold: 100 };
        assert!(path_length_stats::<f64>(&g, small).unwrap().exact);
        let large = PathMode::Auto { sources: 10, seed: 0, exact_threshold: 50 };
        assert_eq!(path_length_stats::<f64>(&g, large).unwrap().sources, 10);
    }
}
