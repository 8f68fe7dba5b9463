//! Evaluation arithmetic: scaling ratios, RMSE, Jensen–Shannon distance and
//! normal-approximation confidence intervals.

use serde::{Deserialize, Serialize};

use crate::distribution::{align, Distribution};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `sampled / original`, or `None` when the ratio is undefined.
pub fn scaling_ratio<F: Scalar>(sampled: F, original: F) -> Option<F> {
    if original == F::zero() || !original.is_finite() || !sampled.is_finite() {
        None
    } else {
        Some(sampled / original)
    }
}

/// Scaling ratio after moving both values by `offset`. Assortativity uses an
/// offset of one so that `[-1, 1]` becomes `[0, 2]`.
pub fn shifted_scaling_ratio<F: Scalar>(sampled: F, original: F, offset: F) -> Option<F> {
    scaling_ratio(sampled + offset, original + offset)
}

pub fn rmse<F: Scalar>(samples: &[F], truth: F) -> Result<F> {
    if samples.is_empty() {
        return Err(Error::EmptySequence);
    }
    let sum_sq: F = samples.iter().map(|&x| (x - truth) * (x - truth)).sum();
    Ok((sum_sq / F::from_count(samples.len())).sqrt())
}

pub fn mean<F: Scalar>(values: &[F]) -> Option<F> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().copied().sum::<F>() / F::from_count(values.len()))
    }
}

/// Sample standard deviation (`k - 1` denominator).
pub fn sample_std<F: Scalar>(values: &[F]) -> Option<F> {
    if values.len() < 2 {
        return None;
    }
    let mu = mean(values)?;
    let ss: F = values.iter().map(|&x| (x - mu) * (x - mu)).sum();
    Some((ss / F::from_count(values.len() - 1)).sqrt())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    /// Bounds the distance by one.
    #[default]
    Two,
    Natural,
}

/// Square root of the Jensen–Shannon divergence between two distributions
/// after aligning their supports.
pub fn jsd<F: Scalar>(p: &Distribution<F>, q: &Distribution<F>, base: LogBase) -> Result<F> {
    p.check_normalized(1e-6)?;
    q.check_normalized(1e-6)?;
    let (a, b) = align(p, q);
    Ok(jsd_aligned(&a, &b, base))
}

/// Jensen–Shannon distance of two weight vectors over the same support.
pub fn jsd_aligned<F: Scalar>(p: &[F], q: &[F], base: LogBase) -> F {
    debug_assert_eq!(p.len(), q.len());
    let half = F::lit(0.5);
    let mut kl_p = F::zero();
    let mut kl_q = F::zero();
    for (&x, &y) in p.iter().zip(q) {
        let m = (x + y) * half;
        if x > F::zero() {
            kl_p = kl_p + x * (x / m).ln();
        }
        if y > F::zero() {
            kl_q = kl_q + y * (y / m).ln();
        }
    }
    let mut divergence = half * kl_p + half * kl_q;
    if base == LogBase::Two {
        divergence = divergence / F::lit(std::f64::consts::LN_2);
    }
    divergence.max(F::zero()).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval<F> {
    pub mean: F,
    /// `None` with fewer than two values.
    pub half_width: Option<F>,
}

/// Mean and `1.96 * s / sqrt(k)` half-width.
pub fn confidence_interval_95<F: Scalar>(values: &[F]) -> Result<ConfidenceInterval<F>> {
    let mean = mean(values).ok_or(Error::EmptySequence)?;
    let half_width = sample_std(values).map(|s| F::lit(1.96) * s / F::from_count(values.len()).sqrt());
    Ok(ConfidenceInterval { mean, half_width })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::DistributionKind;

    fn dist(pairs: &[(u64, f64)]) -> Distribution<f64> {
        let (s, w): (Vec<u64>, Vec<f64>) = pairs.iter().copied().unzip();
        Distribution::from_pmf(DistributionKind::Degree, s, w).unwrap()
    }

    #[test]
    fn scaling_ratio_cases() {
        assert_eq!(scaling_ratio(5.74, 5.74), Some(1.0));
        assert_eq!(scaling_ratio(3.58, 7.16), Some(0.5));
        assert_eq!(scaling_ratio(1.0, 0.0), None);
        assert_eq!(shifted_scaling_ratio(-0.05, -0.05, 1.0), Some(1.0));
        let r = shifted_scaling_ratio(-0.5f64, 0.0, 1.0).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rmse_cases() {
        assert_eq!(rmse(&[5.0, 5.0, 5.0], 5.0).unwrap(), 0.0);
        assert_eq!(rmse(&[3.0], 5.0).unwrap(), 2.0);
        let direct = ((2.25 + 0.25 + 0.25 + 2.25) / 4.0f64).sqrt();
        assert!((rmse(&[1.0, 2.0, 3.0, 4.0], 2.5).unwrap() - direct).abs() < 1e-15);
        assert!((direct - 1.25f64.sqrt()).abs() < 1e-15);
        assert!(matches!(rmse::<f64>(&[], 1.0), Err(Error::EmptySequence)));
    }

    #[test]
    fn jsd_identity_and_disjoint_maximum() {
        let p = dist(&[(1, 0.25), (2, 0.75)]);
        assert_eq!(jsd(&p, &p, LogBase::Two).unwrap(), 0.0);
        let a = dist(&[(0, 1.0)]);
        let b = dist(&[(1, 1.0)]);
        assert!((jsd(&a, &b, LogBase::Two).unwrap() - 1.0).abs() < 1e-15);
        assert!((jsd(&a, &b, LogBase::Natural).unwrap() - std::f64::consts::LN_2.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn jsd_matches_term_by_term_oracle() {
        // p = {a: .5, b: .5}, q = {a: 1}; m = {a: .75, b: .25}.
        let kl_p = 0.5 * (0.5f64 / 0.75).log2() + 0.5 * (0.5f64 / 0.25).log2();
        let kl_q = 1.0 * (1.0f64 / 0.75).log2();
        let oracle = (0.5 * kl_p + 0.5 * kl_q).sqrt();
        let got = jsd(&dist(&[(0, 0.5), (1, 0.5)]), &dist(&[(0, 1.0)]), LogBase::Two).unwrap();
        assert!((got - oracle).abs() < 1e-15, "{got} vs {oracle}");
    }

    #[test]
    fn jsd_rejects_unnormalized() {
        let p = dist(&[(0, 1.0)]);
        let bad = Distribution::from_parts_unchecked(DistributionKind::Degree, vec![0], vec![0.9]);
        assert!(matches!(jsd(&p, &bad, LogBase::Two), Err(Error::Unnormalized(_))));
    }

    #[test]
    fn confidence_interval_cases() {
        let ci = confidence_interval_95(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!((ci.mean, ci.half_width), (1.0, Some(0.0)));
        let ci = confidence_interval_95::<f64>(&[0.0, 2.0]).unwrap();
        assert_eq!(ci.mean, 1.0);
        assert!((ci.half_width.unwrap() - 1.96).abs() < 1e-12);
        assert_eq!(confidence_interval_95(&[3.0]).unwrap().half_width, None);
        assert!(confidence_interval_95::<f64>(&[]).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let ci = confidence_interval_95(&[0.0f32, 2.0]).unwrap();
        assert!((ci.half_width.unwrap() - 1.96).abs() < 1e-5);
        assert!((rmse(&[3.0f32], 5.0).unwrap() - 2.0).abs() < 1e-6);
    }
}
