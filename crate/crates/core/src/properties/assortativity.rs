use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Degree assortativity: Pearson correlation of endpoint degrees over both
/// orientations of every edge.
///
/// Returns `Ok(None)` when the endpoint-degree variance is zero (every edge
/// joins nodes of one common degree), where the coefficient is undefined.
pub fn assortativity<F: Scalar>(g: &Graph) -> Result<Option<F>> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    // Exact integer moments over the 2m oriented edges:
    //   sum d_u = sum_v d_v^2, sum d_u^2 = sum_v d_v^3, sum d_u d_w = 2 sum_{edges} d_u d_w.
    let oriented = 2 * g.edge_count() as i128;
    let (mut first, mut second) = (0i128, 0i128);
    for d in g.degrees() {
        let d = d as i128;
        first += d * d;
        second += d * d * d;
    }
    let cross: i128 = g.edges().map(|(u, w)| 2 * (g.degree(u) * g.degree(w)) as i128).sum();

    let numerator = oriented * cross - first * first;
    let denominator = oriented * second - first * first;
    if denominator == 0 {
        return Ok(None);
    }
    let r = numerator as f64 / denominator as f64;
    Ok(Some(F::lit(r.clamp(-1.0, 1.0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::*;

    fn pearson_oracle(g: &Graph) -> f64 {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for u in 0..g.node_count() {
            for &w in g.neighbors(u) {
                xs.push(g.degree(u) as f64);
                ys.push(g.degree(w) as f64);
            }
        }
        let k = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / k;
        let my = ys.iter().sum::<f64>() / k;
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
        cov / (vx * vy).sqrt()
    }

    #[test]
    fn star_is_perfectly_disassortative() {
        for n in [3, 5, 20] {
            assert_eq!(assortativity::<f64>(&star(n)).unwrap(), Some(-1.0));
        }
    }

    #[test]
    fn path_of_four_matches_pearson() {
        // Oriented pairs: (1,2),(2,1),(2,2),(2,2),(2,1),(1,2) -> r = -1/2.
        let r = assortativity::<f64>(&path(4)).unwrap().unwrap();
        assert!((r - pearson_oracle(&path(4))).abs() < 1e-12);
        assert!((r + 0.5).abs() < 1e-12);
    }

    #[test]
    fn regular_graphs_are_undefined() {
        assert_eq!(assortativity::<f64>(&cycle(7)).unwrap(), None);
        assert_eq!(assortativity::<f64>(&complete(5)).unwrap(), None);
        assert!(assortativity::<f64>(&Graph::empty(2)).is_err());
    }

    #[test]
    fn random_graphs_match_pearson() {
        for seed in 0..10 {
            let g = gnp(60, 0.08, seed);
            let r = assortativity::<f64>(&g).unwrap().unwrap();
            assert!((r - pearson_oracle(&g)).abs() < 1e-9);
        }
    }
}
