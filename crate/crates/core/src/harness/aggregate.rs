//! Flat result rows and the tables derived from them. Everything here is a
//! pure function of the rows, so tables can be rebuilt from CSV alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::distribution::DistributionKind;
use crate::metrics::{confidence_interval_95, mean, rmse, sample_std, shifted_scaling_ratio};
use crate::properties::Property;
use crate::samplers::Method;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// The property has no value on this graph (e.g. zero degree variance).
    Undefined,
    Error,
}

/// One sampled scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawRow {
    pub dataset: String,
    pub method: Method,
    pub phi: f64,
    pub rep: usize,
    pub property: Property,
    pub value: Option<f64>,
    pub status: Status,
}

/// One scalar of an original graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OriginalRow {
    pub dataset: String,
    pub property: Property,
    pub value: Option<f64>,
    pub status: Status,
}

/// Distance between one sample's distribution and the original's.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsdRawRow {
    pub dataset: String,
    pub method: Method,
    pub phi: f64,
    pub rep: usize,
    pub distribution: DistributionKind,
    pub jsd: Option<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointStat {
    pub dataset: String,
    pub method: Method,
    pub phi: f64,
    pub property: Property,
    /// Repetitions with a defined value.
    pub reps: usize,
    pub value_mean: Option<f64>,
    pub scaling_ratio_mean: Option<f64>,
    pub ci95: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RmseRow {
    pub dataset: String,
    pub method: Method,
    pub property: Property,
    /// Root mean square error of the per-fraction means against the
    /// original value.
    pub rmse: Option<f64>,
    /// Sample standard deviation of the per-repetition errors.
    pub std: Option<f64>,
    /// Sampling fractions that contributed.
    pub phis: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsdRow {
    pub dataset: String,
    pub method: Method,
    pub distribution: DistributionKind,
    pub jsd: Option<f64>,
    pub std: Option<f64>,
    pub reps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    /// `rmse` or `jsd`.
    pub metric: String,
    /// Property or distribution name.
    pub target: String,
    pub method: Method,
    /// Mean over datasets.
    pub value: f64,
    /// Mean of the per-dataset standard deviations.
    pub std: Option<f64>,
    pub datasets: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tables {
    pub point_stats: Vec<PointStat>,
    pub rmse: Vec<RmseRow>,
    pub jsd: Vec<JsdRow>,
    pub summary: Vec<SummaryRow>,
    /// Cells that were missing or undefined and left as gaps.
    pub warnings: usize,
}

/// Orders positive sampling fractions exactly.
fn phi_key(phi: f64) -> u64 {
    phi.to_bits()
}

fn originals_map(originals: &[OriginalRow]) -> BTreeMap<(&str, Property), f64> {
    originals
        .iter()
        .filter_map(|o| Some(((o.dataset.as_str(), o.property), o.value.filter(|_| o.status == Status::Ok)?)))
        .collect()
}

pub fn aggregate(raw: &[RawRow], originals: &[OriginalRow], jsd_raw: &[JsdRawRow]) -> Tables {
    let mut warnings = 0;
    let truth = originals_map(originals);

    // (dataset, method, property) -> phi -> defined values
    type Cells<'a> = BTreeMap<(&'a str, Method, Property), BTreeMap<u64, (f64, Vec<f64>)>>;
    let mut cells: Cells = BTreeMap::new();
    for r in raw {
        let slot = cells
            .entry((r.dataset.as_str(), r.method, r.property))
            .or_default()
            .entry(phi_key(r.phi))
            .or_insert((r.phi, Vec::new()));
        match (r.status, r.value) {
            (Status::Ok, Some(v)) => slot.1.push(v),
            _ => warnings += 1,
        }
    }

    let mut point_stats = Vec::new();
    let mut rmse_rows = Vec::new();
    for (&(dataset, method, property), by_phi) in &cells {
        let original = truth.get(&(dataset, property)).copied();
        let offset = property.scaling_offset();
        let mut phi_means = Vec::new();
        let mut errors = Vec::new();
        for (phi, values) in by_phi.values() {
            let ratios: Vec<f64> = original
                .map(|o| values.iter().filter_map(|&v| shifted_scaling_ratio(v, o, offset)).collect())
                .unwrap_or_default();
            let ci = confidence_interval_95(&ratios).ok();
            let value_mean = mean(values);
            if let (Some(m), Some(o)) = (value_mean, original) {
                phi_means.push(m);
                errors.extend(values.iter().map(|&v| v - o));
            } else {
                warnings += 1;
            }
            point_stats.push(PointStat {
                dataset: dataset.to_string(),
                method,
                phi: *phi,
                property,
                reps: values.len(),
                value_mean,
                scaling_ratio_mean: ci.map(|c| c.mean),
                ci95: ci.and_then(|c| c.half_width),
            });
        }
        rmse_rows.push(RmseRow {
            dataset: dataset.to_string(),
            method,
            property,
            rmse: original.and_then(|o| rmse(&phi_means, o).ok()),
            std: sample_std(&errors),
            phis: phi_means.len(),
        });
    }

    let mut by_dist: BTreeMap<(&str, Method, DistributionKind), Vec<f64>> = BTreeMap::new();
    for r in jsd_raw {
        let slot = by_dist.entry((r.dataset.as_str(), r.method, r.distribution)).or_default();
        match (r.status, r.jsd) {
            (Status::Ok, Some(v)) => slot.push(v),
            _ => warnings += 1,
        }
    }
    let jsd_rows: Vec<JsdRow> = by_dist
        .into_iter()
        .map(|((dataset, method, distribution), values)| JsdRow {
            dataset: dataset.to_string(),
            method,
            distribution,
            jsd: mean(&values),
            std: sample_std(&values),
            reps: values.len(),
        })
        .collect();

    let summary = summarize(&rmse_rows, &jsd_rows);
    Tables { point_stats, rmse: rmse_rows, jsd: jsd_rows, summary, warnings }
}

/// Per-method averages over datasets of every RMSE and JSD table.
pub fn summarize(rmse_rows: &[RmseRow], jsd_rows: &[JsdRow]) -> Vec<SummaryRow> {
    // (metric, target, method) -> (values, stds)
    type Groups = BTreeMap<(u8, String, Method), (Vec<f64>, Vec<f64>)>;
    let mut groups = Groups::new();
    for r in rmse_rows {
        if let Some(v) = r.rmse {
            let g = groups.entry((0, r.property.name().to_string(), r.method)).or_default();
            g.0.push(v);
            g.1.extend(r.std);
        }
    }
    for r in jsd_rows {
        if let Some(v) = r.jsd {
            let g = groups.entry((1, r.distribution.name().to_string(), r.method)).or_default();
            g.0.push(v);
            g.1.extend(r.std);
        }
    }
    groups
        .into_iter()
        .map(|((metric, target, method), (values, stds))| SummaryRow {
            metric: if metric == 0 { "rmse" } else { "jsd" }.to_string(),
            target,
            method,
            value: mean(&values).expect("groups are never empty"),
            std: mean(&stds),
            datasets: values.len(),
        })
        .collect()
}

/// Looks up one summary value.
pub fn summary_value(rows: &[SummaryRow], metric: &str, target: &str, method: Method) -> Option<f64> {
    rows.iter().find(|r| r.metric == metric && r.target == target && r.method == method).map(|r| r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(dataset: &str, method: Method, phi: f64, rep: usize, property: Property, value: f64) -> RawRow {
        RawRow { dataset: dataset.into(), method, phi, rep, property, value: Some(value), status: Status::Ok }
    }

    fn original(dataset: &str, property: Property, value: f64) -> OriginalRow {
        OriginalRow { dataset: dataset.into(), property, value: Some(value), status: Status::Ok }
    }

    #[test]
    fn perfect_cell_has_unit_ratio_and_zero_error() {
        let raw: Vec<RawRow> =
            (0..4).map(|rep| row("g", Method::Ls, 0.02, rep, Property::AvgPathLength, 5.74)).collect();
        let t = aggregate(&raw, &[original("g", Property::AvgPathLength, 5.74)], &[]);
        assert_eq!(t.point_stats.len(), 1);
        assert_eq!(t.point_stats[0].scaling_ratio_mean, Some(1.0));
        assert_eq!(t.point_stats[0].ci95, Some(0.0));
        assert_eq!(t.rmse[0].rmse, Some(0.0));
        assert_eq!(t.warnings, 0);
    }

    #[test]
    fn assortativity_ratio_is_shifted() {
        let raw = vec![row("g", Method::Fs, 0.1, 0, Property::Assortativity, -0.05)];
        let t = aggregate(&raw, &[original("g", Property::Assortativity, -0.05)], &[]);
        assert_eq!(t.point_stats[0].scaling_ratio_mean, Some(1.0));
        let raw = vec![row("g", Method::Fs, 0.1, 0, Property::Assortativity, 0.0)];
        let t = aggregate(&raw, &[original("g", Property::Assortativity, -0.5)], &[]);
        assert_eq!(t.point_stats[0].scaling_ratio_mean, Some(2.0));
    }

    #[test]
    fn rmse_uses_per_fraction_means() {
        // phi 0.02 reps average to 3, phi 0.04 reps average to 7; truth 5.
        let raw = vec![
            row("g", Method::Rd, 0.02, 0, Property::AvgDegree, 2.0),
            row("g", Method::Rd, 0.02, 1, Property::AvgDegree, 4.0),
            row("g", Method::Rd, 0.04, 0, Property::AvgDegree, 6.0),
            row("g", Method::Rd, 0.04, 1, Property::AvgDegree, 8.0),
        ];
        let t = aggregate(&raw, &[original("g", Property::AvgDegree, 5.0)], &[]);
        assert_eq!(t.rmse[0].rmse, Some(2.0));
        assert_eq!(t.rmse[0].phis, 2);
        let errors: [f64; 4] = [-3.0, -1.0, 1.0, 3.0];
        let var = errors.iter().map(|e| e * e).sum::<f64>() / 3.0;
        assert!((t.rmse[0].std.unwrap() - var.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn two_datasets_average_in_summary() {
        let rows = vec![
            RmseRow {
                dataset: "a".into(),
                method: Method::Xs,
                property: Property::Modularity,
                rmse: Some(0.1),
                std: None,
                phis: 5,
            },
            RmseRow {
                dataset: "b".into(),
                method: Method::Xs,
                property: Property::Modularity,
                rmse: Some(0.3),
                std: None,
                phis: 5,
            },
        ];
        let s = summarize(&rows, &[]);
        assert_eq!(s.len(), 1);
        assert!((s[0].value - 0.2).abs() < 1e-12);
        assert_eq!(s[0].datasets, 2);
    }

    #[test]
    fn gaps_are_counted_not_filled() {
        let mut raw = vec![row("g", Method::Hj, 0.02, 0, Property::Assortativity, 0.1)];
        raw.push(RawRow { value: None, status: Status::Undefined, rep: 1, ..raw[0].clone() });
        let t = aggregate(&raw, &[], &[]);
        assert_eq!(t.point_stats[0].reps, 1);
        assert_eq!(t.point_stats[0].scaling_ratio_mean, None);
        assert_eq!(t.rmse[0].rmse, None);
        assert_eq!(t.warnings, 2);
        assert!(t.summary.is_empty());
    }

    #[test]
    fn jsd_table_averages_reps() {
        let mk = |rep, jsd| JsdRawRow {
            dataset: "g".into(),
            method: Method::Ls,
            phi: 0.02,
            rep,
            distribution: DistributionKind::PathLength,
            jsd: Some(jsd),
            status: Status::Ok,
        };
        let t = aggregate(&[], &[], &[mk(0, 0.2), mk(1, 0.4)]);
        assert!((t.jsd[0].jsd.unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(summary_value(&t.summary, "jsd", "path_length", Method::Ls), t.jsd[0].jsd);
    }
}
