use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Statistic fit on a training sample and scored against foreign targets.
///
/// Implementations must be deterministic and invariant to permutations
/// of the sample.
pub trait DecisionRule<T>: Send + Sync {
    fn name(&self) -> &str;
    fn fit(&self, sample: &[T]) -> Result<T>;
}

/// The sample mean.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MeanRule;

impl<T: Scalar> DecisionRule<T> for MeanRule {
    fn name(&self) -> &str {
        "mean"
    }

    fn fit(&self, sample: &[T]) -> Result<T> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        // Summing in sorted order makes the result bit-identical under any
        // permutation of the input.
        let mut sorted = sample.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite observations"));
        Ok(sorted.iter().copied().sum::<T>() / T::of_usize(sample.len()))
    }
}

/// Built-in rules selectable by name.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    #[default]
    Mean,
}

impl RuleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleKind::Mean => "mean",
        }
    }
}

impl<T: Scalar> DecisionRule<T> for RuleKind {
    fn name(&self) -> &str {
        self.as_str()
    }

    fn fit(&self, sample: &[T]) -> Result<T> {
        match self {
            RuleKind::Mean => MeanRule.fit(sample),
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mean" => Ok(RuleKind::Mean),
            other => Err(format!("unknown rule `{other}` (expected mean)")),
        }
    }
}

/// Fits `rule` on `sample`.
pub fn fit_rule<T, R>(rule: &R, sample: &[T]) -> Result<T>
where
    T: Scalar,
    R: DecisionRule<T> + ?Sized,
{
    rule.fit(sample)
}
