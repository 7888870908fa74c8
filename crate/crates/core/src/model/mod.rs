//! Data model for multi-source samples, losses and decision rules.

mod dataset;
mod loss;
mod proportions;
mod rule;

pub use dataset::{MultiSourceDataset, SourceLabel};
pub use loss::{Loss, LossKind};
pub use proportions::Proportions;
pub use rule::{fit_rule, DecisionRule, MeanRule, RuleKind};
