use std::collections::BTreeMap;

use crate::distribution::{Distribution, DistributionKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{ratio, Scalar};

/// `2m / n`.
pub fn average_degree<F: Scalar>(g: &Graph) -> Result<F> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(ratio(2 * g.edge_count() as u128, g.node_count() as u128))
}

/// Fraction of nodes with each degree.
pub fn degree_distribution<F: Scalar>(g: &Graph) -> Result<Distribution<F>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for d in g.degrees() {
        *counts.entry(d as u64).or_default() += 1;
    }
    Distribution::from_counts(DistributionKind::Degree, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    #[test]
    fn small_cases() {
        assert_eq!(average_degree::<f64>(&complete(3)).unwrap(), 2.0);
        let k3 = degree_distribution::<f64>(&complete(3)).unwrap();
        assert_eq!((k3.support(), k3.pmf()), (&[2u64][..], &[1.0][..]));
        let s = degree_distribution::<f64>(&star(5)).unwrap();
        assert_eq!((s.support(), s.pmf()), (&[1u64, 4][..], &[0.8, 0.2][..]));
        assert!(average_degree::<f64>(&Graph::empty(0)).is_err());
    }

    #[test]
    fn table_averages_from_counts() {
        // Published averages are truncated, not rounded, to two decimals:
        // 2 * 89157 / 23166 = 7.6973.
        let truncated = |x: f64| (x * 100.0).floor() / 100.0;
        let cora: f64 = ratio(2 * 89_157, 23_166);
        let citeseer: f64 = ratio(2 * 814_134, 227_320);
        assert_eq!(truncated(cora), 7.69);
        assert_eq!(truncated(citeseer), 7.16);
    }

    #[test]
    fn histogram_oracle() {
        let g = gnp(50, 0.1, 4);
        let d = degree_distribution::<f64>(&g).unwrap();
        for (&s, &p) in d.support().iter().zip(d.pmf()) {
            let count = (0..50).filter(|&v| g.degree(v) as u64 == s).count();
            assert_eq!(p, count as f64 / 50.0);
        }
    }
}
