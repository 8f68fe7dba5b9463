//! Undirected simple graphs in compressed sparse row form.

mod components;
mod load;

pub use components::{connected_components, largest_connected_component, Components};
pub use load::{
    load_edge_list, read_edge_list, write_edge_list, EdgeListFormat, EdgeListInput, EdgeListSource, LoadStats,
    LoadedGraph,
};

use crate::error::{Error, Result};

/// Dense node identifier in `[0, n)`.
pub type NodeId = usize;

/// Immutable undirected simple graph.
///
/// Adjacency is stored once in CSR form: `targets[offsets[v]..offsets[v + 1]]`
/// is the ascending, duplicate-free neighbor list of `v`. Every edge appears
/// in both endpoint lists, so `targets.len() == 2 * m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Graph {
    /// A graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self { offsets: vec![0; n + 1], targets: Vec::new() }
    }

    /// Builds a graph on `n` nodes from arbitrary pairs.
    ///
    /// Direction is ignored, self-loops are dropped and repeated pairs are
    /// merged. Node ids must lie below `n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if u != v {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_pairs(n, &pairs))
    }

    /// `pairs` must be sorted, unique, in range and satisfy `u < v`.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in pairs {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * pairs.len()];
        // Sorted (u, v) order fills every list in ascending order: the smaller
        // neighbors of x arrive as (u, x) pairs before any (x, v) pair.
        for &(u, v) in pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        Self { offsets, targets }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    /// Degree of `v`. Panics when `v` is out of range; see [`Graph::try_degree`].
    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`. Panics when `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn try_degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.degree(v))
    }

    pub fn try_neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check_node(v)?;
        Ok(self.neighbors(v))
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { id: v, n: self.node_count() })
        }
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        if u >= self.node_count() || v >= self.node_count() {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Every edge once as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            let adj = self.neighbors(u);
            let start = adj.partition_point(|&w| w <= u);
            adj[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Approximate heap footprint of the adjacency structure in bytes.
    pub fn memory_bytes(&self) -> usize {
        (self.offsets.capacity() + self.targets.capacity()) * std::mem::size_of::<usize>()
    }
}

/// A duplicate-free set of node ids of some host graph, kept in ascending order.
///
/// The position of an id in the set is its index in the graph returned by
/// [`induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
#[serde(transparent)]
pub struct NodeSet {
    ids: Vec<NodeId>,
}

impl NodeSet {
    /// Validates ids against a host graph of `n` nodes, sorting and
    /// rejecting duplicates.
    pub fn new(mut ids: Vec<NodeId>, n: usize) -> Result<Self> {
        ids.sort_unstable();
        if let Some(&id) = ids.iter().find(|&&id| id >= n) {
            return Err(Error::NodeOutOfRange { id, n });
        }
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("duplicate node id {} in node set", w[0])));
        }
        Ok(Self { ids })
    }

    pub fn all(n: usize) -> Self {
        Self { ids: (0..n).collect() }
    }

    pub(crate) fn from_sorted_unchecked(ids: Vec<NodeId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Self { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn into_vec(self) -> Vec<NodeId> {
        self.ids
    }
}

/// The subgraph of `g` spanned by `nodes`, re-indexed so that node `i` of the
/// result is `nodes.as_slice()[i]`.
pub fn induced_subgraph(g: &Graph, nodes: &NodeSet) -> Result<Graph> {
    let n = g.node_count();
    if let Some(&last) = nodes.as_slice().last() {
        g.check_node(last)?;
    }
    let mut position = vec![usize::MAX; n];
    for (i, v) in nodes.iter().enumerate() {
        position[v] = i;
    }
    let mut pairs = Vec::new();
    for (i, u) in nodes.iter().enumerate() {
        for &w in g.neighbors(u) {
            let j = position[w];
            if j != usize::MAX && i < j {
                pairs.push((i, j));
            }
        }
    }
    // Ascending i, and ascending j within each i because adjacency is sorted
    // and positions are monotone in the original ids.
    Ok(Graph::from_sorted_pairs(nodes.len(), &pairs))
}


#[cfg(test)]
mod tests {
    use super::test_graphs::*;
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn degrees_of_small_graphs() {
        let k4 = complete(4);
        assert!((0..4).all(|v| k4.degree(v) == 3));
        let s = star(10);
        assert_eq!(s.degree(0), 9);
        assert_eq!(s.degree(7), 1);
        assert_eq!(s.neighbors(3), &[0]);
        assert!(matches!(s.try_degree(10), Err(Error::NodeOutOfRange { id: 10, n: 10 })));
    }

    #[test]
    fn induced_clique_restriction() {
        let k3 = induced_subgraph(&complete(4), &NodeSet::new(vec![0, 1, 2], 4).unwrap()).unwrap();
        assert_eq!((k3.node_count(), k3.edge_count()), (3, 3));
    }

    #[test]
    fn induced_star_leaves_is_edgeless() {
        let g = induced_subgraph(&star(5), &NodeSet::new(vec![2, 3, 4], 5).unwrap()).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 0));
    }

    #[test]
    fn node_set_rejects_out_of_range_and_duplicates() {
        assert!(matches!(NodeSet::new(vec![0, 5], 5), Err(Error::NodeOutOfRange { .. })));
        assert!(NodeSet::new(vec![1, 1], 5).is_err());
    }

    #[test]
    fn induced_matches_filter_oracle() {
        use rand::seq::index::sample;
        use rand::SeedableRng;
        let g = gnp(20, 0.3, 7);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let chosen = sample(&mut rng, 20, 8).into_vec();
        let set = NodeSet::new(chosen, 20).unwrap();
        let sub = induced_subgraph(&g, &set).unwrap();
        let ids = set.as_slice();
        let got: BTreeSet<_> = sub.edges().map(|(a, b)| (ids[a], ids[b])).collect();
        let want: BTreeSet<_> = g.edges().filter(|&(u, v)| set.contains(u) && set.contains(v)).collect();
        assert_eq!(got, want);
    }

    fn arb_edges() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..40).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..120)))
    }

    proptest! {
        #[test]
        fn construction_invariants((n, edges) in arb_edges()) {
            let g = Graph::from_edges(n, edges.clone()).unwrap();
            let degree_sum: usize = g.degrees().sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
            for v in 0..n {
                let adj = g.neighbors(v);
                prop_assert!(adj.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(!adj.contains(&v));
                for &w in adj {
                    prop_assert!(g.neighbors(w).binary_search(&v).is_ok());
                }
            }
            let distinct: BTreeSet<_> = edges
                .iter()
                .filter(|(u, v)| u != v)
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            prop_assert_eq!(g.edges().collect::<BTreeSet<_>>(), distinct);
        }

        #[test]
        fn induced_on_all_nodes_is_identity((n, edges) in arb_edges()) {
            let g = Graph::from_edges(n, edges).unwrap();
            prop_assert_eq!(induced_subgraph(&g, &NodeSet::all(n)).unwrap(), g);
        }
    }
}
