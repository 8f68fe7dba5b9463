//! The six graph properties and their distributions.

mod assortativity;
mod clustering;
mod community;
mod degree;
mod paths;

pub use assortativity::assortativity;
pub use clustering::{
    average_clustering, clustering_distribution, global_clustering, local_clustering, local_clustering_all,
    triangle_count, triangles_per_node, GlobalClustering, LowDegreeRule,
};
pub use community::{detect_communities, modularity, Louvain, Partition};
pub use degree::{average_degree, degree_distribution};
pub use paths::{
    average_path_length, path_length_stats, PathLengthStats, PathMode, DEFAULT_PATH_SOURCES, EXACT_PATH_THRESHOLD,
};

use serde::{Deserialize, Serialize};

use crate::distribution::{Distribution, DistributionKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropertyOptions {
    pub path_mode: PathMode,
    pub low_degree: LowDegreeRule,
    pub community_seed: u64,
}

impl Default for PropertyOptions {
    fn default() -> Self {
        Self { path_mode: PathMode::default(), low_degree: LowDegreeRule::Zero, community_seed: 0 }
    }
}

/// Scalars and distributions for one graph. Optional fields are `None` when
/// the quantity is undefined for the graph (no edges, zero degree variance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport<F> {
    pub nodes: usize,
    pub edges: usize,
    pub avg_degree: F,
    pub avg_clustering: F,
    pub avg_path_length: Option<F>,
    pub global_clustering: F,
    pub global_clustering_defined: bool,
    pub assortativity: Option<F>,
    pub modularity: Option<F>,
    pub communities: usize,
    pub degree_distribution: Distribution<F>,
    pub clustering_distribution: Option<Distribution<F>>,
    pub path_length_distribution: Option<Distribution<F>>,
    pub path_length_exact: bool,
    pub path_sources: usize,
    pub lcc_fraction: F,
}

impl<F: Scalar> PropertyReport<F> {
    pub fn distribution(&self, kind: DistributionKind) -> Option<&Distribution<F>> {
        match kind {
            DistributionKind::Degree => Some(&self.degree_distribution),
            DistributionKind::Clustering => self.clustering_distribution.as_ref(),
            DistributionKind::PathLength => self.path_length_distribution.as_ref(),
        }
    }

    pub fn value(&self, property: Property) -> Option<F> {
        match property {
            Property::AvgDegree => Some(self.avg_degree),
            Property::AvgClustering => Some(self.avg_clustering),
            Property::AvgPathLength => self.avg_path_length,
            Property::GlobalClustering => Some(self.global_clustering),
            Property::Assortativity => self.assortativity,
            Property::Modularity => self.modularity,
        }
    }
}

pub fn compute_report<F: Scalar>(g: &Graph, options: &PropertyOptions) -> Result<PropertyReport<F>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let summary = clustering::clustering_summary::<F>(g, options.low_degree);
    let paths = match path_length_stats::<F>(g, options.path_mode) {
        Ok(p) => Some(p),
        Err(Error::NoEdges) => None,
        Err(e) => return Err(e),
    };
    let (modularity, communities) = if g.edge_count() == 0 {
        (None, 0)
    } else {
        let partition = detect_communities(g, options.community_seed)?;
        (Some(modularity::<F>(g, &partition)?), partition.community_count())
    };
    Ok(PropertyReport {
        nodes: g.node_count(),
        edges: g.edge_count(),
        avg_degree: average_degree(g)?,
        avg_clustering: summary.average,
        avg_path_length: paths.as_ref().map(|p| p.average),
        global_clustering: summary.global.value,
        global_clustering_defined: summary.global.defined,
        assortativity: if g.edge_count() == 0 { None } else { assortativity(g)? },
        modularity,
        communities,
        degree_distribution: degree_distribution(g)?,
        clustering_distribution: summary.distribution,
        path_length_exact: paths.as_ref().is_some_and(|p| p.exact),
        path_sources: paths.as_ref().map_or(0, |p| p.sources),
        lcc_fraction: paths.as_ref().map_or(F::zero(), |p| p.component_fraction),
        path_length_distribution: paths.map(|p| p.distribution),
    })
}

/// The six scalar properties compared between sample and original.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    AvgDegree,
    AvgClustering,
    AvgPathLength,
    GlobalClustering,
    Assortativity,
    Modularity,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::AvgDegree,
        Property::AvgClustering,
        Property::AvgPathLength,
        Property::GlobalClustering,
        Property::Assortativity,
        Property::Modularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::AvgDegree => "avg_degree",
            Property::AvgClustering => "avg_clustering",
            Property::AvgPathLength => "avg_path_length",
            Property::GlobalClustering => "global_clustering",
            Property::Assortativity => "assortativity",
            Property::Modularity => "modularity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Shift applied to both values before taking a scaling ratio, moving
    /// assortativity from [-1, 1] into [0, 2].
    pub fn scaling_offset(self) -> f64 {
        if self == Property::Assortativity {
            1.0
        } else {
            0.0
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    #[test]
    fn report_on_triangle() {
        let r: PropertyReport<f64> = compute_report(&complete(3), &PropertyOptions::default()).unwrap();
        assert_eq!(r.avg_degree, 2.0);
        assert_eq!(r.avg_clustering, 1.0);
        assert_eq!(r.global_clustering, 1.0);
        assert_eq!(r.avg_path_length, Some(1.0));
        assert_eq!(r.assortativity, None);
        assert_eq!(r.modularity, Some(0.0));
        assert!(r.path_length_exact);
        assert_eq!(r.lcc_fraction, 1.0);
    }

    #[test]
    fn report_values_stay_in_range() {
        for seed in 0..10 {
            let g = gnp(80, 0.06, seed);
            let r: PropertyReport<f64> = compute_report(&g, &PropertyOptions::default()).unwrap();
            assert!((0.0..=1.0).contains(&r.avg_clustering));
            assert!((0.0..=1.0).contains(&r.global_clustering));
            if let Some(a) = r.assortativity {
                assert!((-1.0..=1.0).contains(&a));
            }
            let q = r.modularity.unwrap();
            assert!((-0.5..=1.0).contains(&q) && q >= 0.0);
            assert!(r.avg_path_length.unwrap() >= 1.0);
            for kind in DistributionKind::ALL {
                let d = r.distribution(kind).unwrap();
                assert!((d.total_mass() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn edgeless_graph_reports_undefined_values() {
        let g = Graph::from_edges(3, []).unwrap();
        let r: PropertyReport<f64> = compute_report(&g, &PropertyOptions::default()).unwrap();
        assert_eq!(r.avg_path_length, None);
        assert_eq!(r.modularity, None);
        assert!(!r.global_clustering_defined);
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(Property::from_name(p.name()), Some(p));
        }
        assert_eq!(Property::Assortativity.scaling_offset(), 1.0);
    }
}
