//! What can and cannot be estimated about the variance of `μ̂_os`.
//!
//! For exchangeable `X_1..X_n` with common mean `μ`, variance `σ²` and
//! covariance `C`, a quadratic statistic has expectation
//! `a(σ² + μ²) + b(C + μ²)`. Only targets in that span admit an unbiased
//! estimator, which rules out `Var(X̄)`, `μ²`, `σ²` and `C` themselves.
//! `s²` does estimate `σ² - C` without bias, but need not be consistent.
//! The practical fallback is a stratified bootstrap.

mod bootstrap;
mod feasibility;
mod pathology;

pub use bootstrap::{bootstrap_replicates, bootstrap_variance, MIN_BOOTSTRAP};
pub use feasibility::{moment_feasibility, quadratic_estimate, Coefficient, FeasibilityResult, MomentTarget};
pub use pathology::{
    pathological_pmf, pathological_sequence, pathological_var_s2, sample_variance_s2, var_s2_normal_control,
    var_s2_study, DiscretePmf, S2StudyRow, MIN_STUDY_REPS,
};
