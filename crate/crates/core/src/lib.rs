//! Out-of-source error estimation for data pooled from several sources.
//!
//! The out-of-source error of a decision rule is its expected loss on a
//! target drawn from one source when the rule was trained on data from the
//! remaining sources. [`oos_estimate`] gives an unbiased estimate of it from
//! a single multi-source sample.
//!
//! Everything is generic over [`Scalar`] (`f64` and `f32`); the aliases below
//! fix `f64`.

pub mod closed_form;
pub mod error;
pub mod estimator;
pub mod model;
pub mod scalar;
pub mod simulation;
pub mod variance_tools;

pub use error::{Error, Result};
pub use estimator::{cvs_estimate, oos_estimate, pairwise_errors, OosEstimate, PairwiseErrorMatrix};
pub use model::{DecisionRule, Loss, LossKind, MeanRule, MultiSourceDataset, Proportions, RuleKind, SourceLabel};
pub use scalar::Scalar;

pub type Dataset = MultiSourceDataset<f64>;
pub type Estimate = OosEstimate<f64>;
pub type PairwiseErrors = PairwiseErrorMatrix<f64>;
pub type Weights = Proportions<f64>;
pub type NormalParams = closed_form::NormalSourceParams<f64>;
pub type Components = closed_form::MomentComponents<f64>;
pub type Distribution = simulation::DistributionSpec<f64>;
pub type Scenario = simulation::ScenarioConfig<f64>;
pub type Report = simulation::SimulationReport<f64>;
pub type Row = simulation::ReportRow<f64>;
pub type Rational = num_rational::Rational64;
pub type RationalTarget = variance_tools::MomentTarget<Rational>;

pub type Dataset32 = MultiSourceDataset<f32>;
pub type NormalParams32 = closed_form::NormalSourceParams<f32>;
