//! Partitions, modularity and seeded Louvain community detection.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Community id per node, dense in `[0, count)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    labels: Vec<usize>,
    count: usize,
}

impl Partition {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let count = labels.iter().max().map_or(0, |&m| m + 1);
        let mut seen = vec![false; count];
        for &l in &labels {
            seen[l] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::PartitionIds(count));
        }
        Ok(Self { labels, count })
    }

    /// Relabels arbitrary ids densely in order of first appearance.
    pub fn from_raw(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels = raw
            .iter()
            .map(|&r| {
                let next = map.len();
                *map.entry(r).or_insert(next)
            })
            .collect();
        Self { labels, count: map.len() }
    }

    pub fn single(n: usize) -> Self {
        Self { labels: vec![0; n], count: usize::from(n > 0) }
    }

    pub fn singletons(n: usize) -> Self {
        Self { labels: (0..n).collect(), count: n }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn community_count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Newman–Girvan modularity, evaluated per community as
/// `sum_c [ m_c / m - (D_c / 2m)^2 ]`.
pub fn modularity<F: Scalar>(g: &Graph, partition: &Partition) -> Result<F> {
    if partition.len() != g.node_count() {
        return Err(Error::PartitionSize { got: partition.len(), expected: g.node_count() });
    }
    let m = g.edge_count() as i128;
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let labels = partition.labels();
    let mut internal = vec![0i128; partition.community_count()];
    let mut degree = vec![0i128; partition.community_count()];
    for v in 0..g.node_count() {
        degree[labels[v]] += g.degree(v) as i128;
    }
    for (u, v) in g.edges() {
        if labels[u] == labels[v] {
            internal[labels[u]] += 1;
        }
    }
    // Q = (4m * sum m_c - sum D_c^2) / (4 m^2), all integers until the end.
    let numerator = 4 * m * internal.iter().sum::<i128>() - degree.iter().map(|d| d * d).sum::<i128>();
    let q = numerator as f64 / (4 * m * m) as f64;
    Ok(F::lit(q))
}

/// Multi-level Louvain settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Louvain {
    pub seed: u64,
    pub max_passes: usize,
    pub max_levels: usize,
}

impl Default for Louvain {
    fn default() -> Self {
        Self { seed: 0, max_passes: 50, max_levels: 32 }
    }
}

/// Weighted graph used between aggregation levels. `loops[i]` is the weight
/// of edges folded inside super-node `i`; `strength[i]` counts it twice.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
    strength: Vec<f64>,
    total: f64,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(usize, f64)>> =
            (0..g.node_count()).map(|v| g.neighbors(v).iter().map(|&w| (w, 1.0)).collect()).collect();
        let strength = (0..g.node_count()).map(|v| g.degree(v) as f64).collect();
        Self { adj, loops: vec![0.0; g.node_count()], strength, total: g.edge_count() as f64 }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// One round of local moves. Returns the community of every node and
    /// whether anything moved.
    fn local_moves(&self, rng: &mut ChaCha8Rng, max_passes: usize) -> (Vec<usize>, bool) {
        let n = self.len();
        let two_m = 2.0 * self.total;
        let mut community: Vec<usize> = (0..n).collect();
        let mut tot = self.strength.clone();
        let mut link = vec![0.0f64; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        let mut moved_any = false;

        for _ in 0..max_passes {
            order.shuffle(rng);
            let mut moves = 0usize;
            for &i in &order {
                let own = community[i];
                let k_i = self.strength[i];
                for &(j, w) in &self.adj[i] {
                    let c = community[j];
                    if link[c] == 0.0 {
                        touched.push(c);
                    }
                    link[c] += w;
                }
                tot[own] -= k_i;
                let gain = |c: usize, link_c: f64| link_c - tot[c] * k_i / two_m;
                let mut best = own;
                let mut best_gain = gain(own, link[own]);
                for &c in &touched {
                    let g = gain(c, link[c]);
                    if g > best_gain + 1e-12 || (g >= best_gain - 1e-12 && c < best && best != own) {
                        best = c;
                        best_gain = g;
                    }
                }
                tot[best] += k_i;
                if best != own {
                    community[i] = best;
                    moves += 1;
                }
                for &c in &touched {
                    link[c] = 0.0;
                }
                touched.clear();
            }
            if moves == 0 {
                break;
            }
            moved_any = true;
        }
        (community, moved_any)
    }

    /// Collapses communities into super-nodes. `community` must be dense.
    fn aggregate(&self, community: &[usize], count: usize) -> Self {
        let mut loops = vec![0.0; count];
        let mut strength = vec![0.0; count];
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); count];
        let mut slot = vec![usize::MAX; count];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, &c) in community.iter().enumerate() {
            members[c].push(i);
            loops[c] += self.loops[i];
            strength[c] += self.strength[i];
        }
        for c in 0..count {
            let row = &mut adj[c];
            for &i in &members[c] {
                for &(j, w) in &self.adj[i] {
                    let d = community[j];
                    if d == c {
                        // Each internal edge is seen from both ends.
                        loops[c] += 0.5 * w;
                    } else if slot[d] == usize::MAX {
                        slot[d] = row.len();
                        row.push((d, w));
                    } else {
                        row[slot[d]].1 += w;
                    }
                }
            }
            for &(d, _) in row.iter() {
                slot[d] = usize::MAX;
            }
        }
        Self { adj, loops, strength, total: self.total }
    }
}

impl Louvain {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    /// Greedy multi-level modularity maximization. Node visiting order is
    /// shuffled by the seed, so the result is reproducible per seed.
    pub fn detect(&self, g: &Graph) -> Result<Partition> {
        if g.edge_count() == 0 {
            return Err(Error::NoEdges);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut level = Level::from_graph(g);
        let mut assignment: Vec<usize> = (0..g.node_count()).collect();
        for _ in 0..self.max_levels {
            let (community, moved) = level.local_moves(&mut rng, self.max_passes);
            if !moved {
                break;
            }
            let dense = Partition::from_raw(&community);
            for a in assignment.iter_mut() {
                *a = dense.labels()[*a];
            }
            level = level.aggregate(dense.labels(), dense.community_count());
        }
        let detected = Partition::from_raw(&assignment);
        // Local moves only ever raise modularity, but a lone community scores
        // exactly zero and is the floor we promise.
        if modularity::<f64>(g, &detected)? < 0.0 {
            return Ok(Partition::single(g.node_count()));
        }
        Ok(detected)
    }
}

pub fn detect_communities(g: &Graph, seed: u64) -> Result<Partition> {
    Louvain::with_seed(seed).detect(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    /// Direct double sum over the adjacency matrix.
    fn modularity_oracle(g: &Graph, labels: &[usize]) -> f64 {
        let n = g.node_count();
        let two_m = 2.0 * g.edge_count() as f64;
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if labels[i] == labels[j] {
                    let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                    q += a - (g.degree(i) * g.degree(j)) as f64 / two_m;
                }
            }
        }
        q / two_m
    }

    fn two_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn two_triangles_score_one_half() {
        let p = Partition::new(vec![0, 0, 0, 1, 1, 1]).unwrap();
        assert!((modularity::<f64>(&two_triangles(), &p).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_community_scores_zero() {
        for g in [two_triangles(), gnp(40, 0.1, 1), star(9)] {
            assert_eq!(modularity::<f64>(&g, &Partition::single(g.node_count())).unwrap(), 0.0);
        }
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(Partition::new(vec![0, 2]), Err(Error::PartitionIds(3))));
        let short = Partition::new(vec![0, 0]).unwrap();
        assert!(matches!(
            modularity::<f64>(&two_triangles(), &short),
            Err(Error::PartitionSize { got: 2, expected: 6 })
        ));
        assert_eq!(Partition::from_raw(&[7, 3, 7, 9]).labels(), &[0, 1, 0, 2]);
    }

    #[test]
    fn matches_double_sum_oracle() {
        for seed in 0..8 {
            let g = gnp(50, 0.1, seed);
            let labels: Vec<usize> = (0..50).map(|v| (v * 7 + seed as usize) % 4).collect();
            let p = Partition::new(labels.clone()).unwrap();
            let q: f64 = modularity(&g, &p).unwrap();
            assert!((q - modularity_oracle(&g, &labels)).abs() < 1e-12);
        }
    }

    #[test]
    fn louvain_finds_disjoint_cliques() {
        let p = detect_communities(&two_triangles(), 3).unwrap();
        assert_eq!(p.community_count(), 2);
        assert_eq!(p.labels()[0], p.labels()[2]);
        assert_ne!(p.labels()[0], p.labels()[3]);
        let b = detect_communities(&barbell(), 0).unwrap();
        assert_eq!(b.community_count(), 2);
    }

    #[test]
    fn louvain_is_seed_deterministic_and_non_negative() {
        for seed in 0..10 {
            let g = gnp(120, 0.05, seed);
            let a = detect_communities(&g, seed).unwrap();
            assert_eq!(a, detect_communities(&g, seed).unwrap());
            assert!(modularity::<f64>(&g, &a).unwrap() >= 0.0);
        }
    }

    #[test]
    fn louvain_recovers_planted_communities() {
        // Three 10-cliques joined in a ring by single edges.
        let mut edges = Vec::new();
        for c in 0..3 {
            for u in 0..10 {
                for v in u + 1..10 {
                    edges.push((10 * c + u, 10 * c + v));
                }
            }
            edges.push((10 * c, (10 * c + 15) % 30));
        }
        let g = Graph::from_edges(30, edges).unwrap();
        let p = detect_communities(&g, 1).unwrap();
        assert_eq!(p.community_count(), 3);
        for c in 0..3 {
            assert!((0..10).all(|u| p.labels()[10 * c + u] == p.labels()[10 * c]));
        }
    }
}
