use std::collections::VecDeque;

use super::{Graph, NodeId, NodeSet};

/// Connected-component labelling.
///
/// Labels are assigned in order of each component's smallest node id, so
/// label 0 always contains node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub labels: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

pub fn connected_components(g: &Graph) -> Components {
    let n = g.node_count();
    let mut labels = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if labels[start] != usize::MAX {
            continue;
        }
        let label = sizes.len();
        labels[start] = label;
        queue.push_back(start);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(u) {
                if labels[w] == usize::MAX {
                    labels[w] = label;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    Components { labels, sizes }
}

/// Nodes of a maximum-cardinality component; ties go to the component with
/// the smallest member id. Empty for the empty graph.
pub fn largest_connected_component(g: &Graph) -> NodeSet {
    let comps = connected_components(g);
    let Some(best) = (0..comps.count()).max_by_key(|&c| (comps.sizes[c], std::cmp::Reverse(c))) else {
        return NodeSet::default();
    };
    let ids: Vec<NodeId> = (0..g.node_count()).filter(|&v| comps.labels[v] == best).collect();
    NodeSet::from_sorted_unchecked(ids)
}
