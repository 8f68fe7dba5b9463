//! Discrete probability mass functions over integer supports.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of uniform bins used for clustering-coefficient distributions.
pub const CLUSTERING_BINS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    /// Support is node degree.
    Degree,
    /// Support is a bin index `b` covering `[b / 100, (b + 1) / 100)`; the
    /// last bin is closed.
    Clustering,
    /// Support is a shortest-path hop count.
    PathLength,
}

impl DistributionKind {
    pub const ALL: [DistributionKind; 3] = [Self::Degree, Self::Clustering, Self::PathLength];

    pub fn name(self) -> &'static str {
        match self {
            Self::Degree => "degree",
            Self::Clustering => "clustering",
            Self::PathLength => "path_length",
        }
    }

    /// Human-readable label for a support value.
    pub fn label(self, support: u64) -> String {
        match self {
            Self::Clustering => format!("{:.2}", support as f64 / CLUSTERING_BINS as f64),
            _ => support.to_string(),
        }
    }
}

/// Maps a clustering coefficient in `[0, 1]` to its bin.
pub fn clustering_bin(c: f64) -> u64 {
    ((c * CLUSTERING_BINS as f64).floor() as u64).min(CLUSTERING_BINS as u64 - 1)
}

/// A normalized probability mass function with strictly ascending support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution<F> {
    pub kind: DistributionKind,
    support: Vec<u64>,
    pmf: Vec<F>,
}

impl<F: Scalar> Distribution<F> {
    /// Normalizes raw counts. Zero counts are dropped; at least one count
    /// must be positive.
    pub fn from_counts<I>(kind: DistributionKind, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
        for (s, c) in counts {
            if c > 0 {
                *merged.entry(s).or_default() += c;
            }
        }
        let total: u64 = merged.values().sum();
        if total == 0 {
            return Err(Error::EmptySequence);
        }
        let (support, pmf) = merged.into_iter().map(|(s, c)| (s, F::lit(c as f64 / total as f64))).unzip();
        Ok(Self { kind, support, pmf })
    }

    /// Accepts a pmf whose mass is within `1e-6` of one.
    pub fn from_pmf(kind: DistributionKind, support: Vec<u64>, pmf: Vec<F>) -> Result<Self> {
        if support.len() != pmf.len() || support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("support must be strictly ascending and match pmf".into()));
        }
        if pmf.iter().any(|&w| !(w >= F::zero())) {
            return Err(Error::Config("pmf weights must be non-negative".into()));
        }
        let dist = Self { kind, support, pmf };
        dist.check_normalized(1e-6)?;
        Ok(dist)
    }

    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(kind: DistributionKind, support: Vec<u64>, pmf: Vec<F>) -> Self {
        Self { kind, support, pmf }
    }

    pub fn check_normalized(&self, tolerance: f64) -> Result<()> {
        let mass = self.total_mass().to_f64_lossy();
        if (mass - 1.0).abs() > tolerance {
            Err(Error::Unnormalized(mass))
        } else {
            Ok(())
        }
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn pmf(&self) -> &[F] {
        &self.pmf
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn total_mass(&self) -> F {
        self.pmf.iter().copied().sum()
    }

    pub fn probability(&self, support: u64) -> F {
        self.support.binary_search(&support).map(|i| self.pmf[i]).unwrap_or_else(|_| F::zero())
    }

    /// Prefix sums of the pmf; the last entry is pinned to exactly one.
    pub fn ecdf(&self) -> Vec<F> {
        let mut acc = F::zero();
        let mut out: Vec<F> = self
            .pmf
            .iter()
            .map(|&w| {
                acc = acc + w;
                acc.min(F::one())
            })
            .collect();
        if let Some(last) = out.last_mut() {
            *last = F::one();
        }
        out
    }

    pub fn mean(&self) -> F {
        self.support.iter().zip(&self.pmf).map(|(&s, &w)| F::lit(s as f64) * w).sum()
    }

    /// Pointwise average of several distributions of the same kind.
    pub fn average(dists: &[Self]) -> Result<Self> {
        let first = dists.first().ok_or(Error::EmptySequence)?;
        let mut acc: BTreeMap<u64, F> = BTreeMap::new();
        for d in dists {
            if d.kind != first.kind {
                return Err(Error::Config("cannot average distributions of different kinds".into()));
            }
            for (&s, &w) in d.support.iter().zip(&d.pmf) {
                let slot = acc.entry(s).or_insert_with(F::zero);
                *slot = *slot + w;
            }
        }
        let k = F::from_count(dists.len());
        let (support, pmf) = acc.into_iter().map(|(s, w)| (s, w / k)).unzip();
        Ok(Self { kind: first.kind, support, pmf })
    }

    /// Writes `support,pmf,ecdf` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "support,pmf,ecdf")?;
        for ((&s, &w), c) in self.support.iter().zip(&self.pmf).zip(self.ecdf()) {
            writeln!(out, "{},{},{}", self.kind.label(s), w, c)?;
        }
        out.flush()
    }
}

/// Union of two supports with zero padding: returns aligned weight vectors.
pub fn align<F: Scalar>(p: &Distribution<F>, q: &Distribution<F>) -> (Vec<F>, Vec<F>) {
    let (mut i, mut j) = (0, 0);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    while i < p.support.len() || j < q.support.len() {
        let sp = p.support.get(i).copied().unwrap_or(u64::MAX);
        let sq = q.support.get(j).copied().unwrap_or(u64::MAX);
        if sp == sq {
            a.push(p.pmf[i]);
            b.push(q.pmf[j]);
            i += 1;
            j += 1;
        } else if sp < sq {
            a.push(p.pmf[i]);
            b.push(F::zero());
            i += 1;
        } else {
            a.push(F::zero());
            b.push(q.pmf[j]);
            j += 1;
        }
    }
    (a, b)
}
