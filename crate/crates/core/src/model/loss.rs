use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Nonnegative loss `L(target, decision)`.
pub trait Loss<T>: Send + Sync {
    fn name(&self) -> &str;
    fn evaluate(&self, target: T, decision: T) -> T;
}

/// Built-in losses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossKind {
    Squared,
    Absolute,
}

impl LossKind {
    pub const ALL: [LossKind; 2] = [LossKind::Squared, LossKind::Absolute];

    pub fn as_str(self) -> &'static str {
        match self {
            LossKind::Squared => "squared",
            LossKind::Absolute => "absolute",
        }
    }
}

impl<T: Scalar> Loss<T> for LossKind {
    fn name(&self) -> &str {
        self.as_str()
    }

    #[inline]
    fn evaluate(&self, target: T, decision: T) -> T {
        let r = target - decision;
        match self {
            LossKind::Squared => r * r,
            LossKind::Absolute => r.abs(),
        }
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LossKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "squared" => Ok(LossKind::Squared),
            "absolute" => Ok(LossKind::Absolute),
            other => Err(format!("unknown loss `{other}` (expected squared or absolute)")),
        }
    }
}
