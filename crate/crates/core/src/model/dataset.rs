use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Opaque source identifier. Ordering is lexicographic on the rendered
/// form, which fixes the canonical source order `1..k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceLabel(String);

impl SourceLabel {
    pub fn new(id: impl fmt::Display) -> Self {
        Self(id.to_string())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SourceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SourceLabel {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for SourceLabel {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// Labeled scalar observations grouped into `k >= 2` nonempty sources.
///
/// Sources are stored in canonical label order; observations keep their
/// input order within a source. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiSourceDataset<T> {
    labels: Vec<SourceLabel>,
    groups: Vec<Vec<T>>,
    total: usize,
}

impl<T: Scalar> MultiSourceDataset<T> {
    /// Groups `(label, value)` records by source.
    pub fn from_records<L, I>(records: I) -> Result<Self>
    where
        L: Into<SourceLabel>,
        I: IntoIterator<Item = (L, T)>,
    {
        let mut groups: BTreeMap<SourceLabel, Vec<T>> = BTreeMap::new();
        for (label, value) in records {
            groups.entry(label.into()).or_default().push(value);
        }
        if groups.is_empty() {
            return Err(Error::EmptyInput);
        }
        Self::build(groups.into_iter().collect())
    }

    /// Builds a dataset from whole groups. Labels must be distinct.
    pub fn from_groups<L, I>(groups: I) -> Result<Self>
    where
        L: Into<SourceLabel>,
        I: IntoIterator<Item = (L, Vec<T>)>,
    {
        let mut sorted: Vec<(SourceLabel, Vec<T>)> =
            groups.into_iter().map(|(l, v)| (l.into(), v)).collect();
        if sorted.is_empty() {
            return Err(Error::EmptyInput);
        }
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateSource(w[0].0.to_string()));
        }
        Self::build(sorted)
    }

    fn build(sorted: Vec<(SourceLabel, Vec<T>)>) -> Result<Self> {
        if sorted.len() < 2 {
            return Err(Error::SingleSource { found: sorted.len() });
        }
        for (label, values) in &sorted {
            if values.is_empty() {
                return Err(Error::EmptySource { source_label: label.to_string() });
            }
            if let Some(v) = values.iter().find(|v| !v.is_finite()) {
                return Err(Error::NonFiniteValue {
                    source_label: label.to_string(),
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let total = sorted.iter().map(|(_, v)| v.len()).sum();
        let (labels, groups) = sorted.into_iter().unzip();
        Ok(Self { labels, groups, total })
    }

    /// Number of sources `k`.
    pub fn k(&self) -> usize {
        self.groups.len()
    }

    /// Total sample size `n`.
    pub fn n(&self) -> usize {
        self.total
    }

    /// Per-source sizes `n_j` in canonical order.
    pub fn sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    pub fn labels(&self) -> &[SourceLabel] {
        &self.labels
    }

    pub fn source(&self, j: usize) -> &[T] {
        &self.groups[j]
    }

    pub fn sources(&self) -> impl Iterator<Item = (&SourceLabel, &[T])> {
        self.labels.iter().zip(self.groups.iter().map(Vec::as_slice))
    }

    /// Returns a copy with source `j` replaced. Used by resampling code;
    /// the size of the source may change but must stay nonzero.
    pub fn with_sources(&self, groups: Vec<Vec<T>>) -> Result<Self> {
        if groups.len() != self.k() {
            return Err(Error::InvalidParameters(format!(
                "expected {} sources, got {}",
                self.k(),
                groups.len()
            )));
        }
        Self::build(self.labels.iter().cloned().zip(groups).collect())
    }
}
