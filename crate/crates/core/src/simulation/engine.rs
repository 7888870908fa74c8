use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{normal_oos_absolute, normal_oos_squared, NormalSourceParams};
use crate::error::{Error, Result};
use crate::estimator::oos_estimate;
use crate::model::{LossKind, Proportions};
use crate::scalar::{mean, sample_variance, Scalar};

use super::distribution::{DistributionSpec, Variate};
use super::scenario::{build_samplers, sample_with_sizes, ScenarioConfig};
use super::seed::replicate_rng;

/// Summary of `μ̂_os` over the replicates at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow<T> {
    pub table: String,
    pub loss: String,
    pub n: usize,
    pub reps: usize,
    pub mean: T,
    /// Empirical variance, `reps - 1` divisor.
    pub var: T,
    /// Standard error of `mean`.
    pub se: T,
    pub mu_os: Option<T>,
    pub bias2: Option<T>,
    /// `bias2 + var`.
    pub mse: Option<T>,
    #[serde(skip)]
    pub sizes: Vec<usize>,
}

impl<T: Scalar> ReportRow<T> {
    /// Proportions actually simulated (differ from the configured ones
    /// only under lenient allocation).
    pub fn effective_proportions(&self) -> Vec<T> {
        let n = T::of_usize(self.sizes.iter().sum());
        self.sizes.iter().map(|&s| T::of_usize(s) / n).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport<T> {
    pub name: String,
    pub loss: LossKind,
    pub rows: Vec<ReportRow<T>>,
}

impl<T: Scalar> SimulationReport<T> {
    pub fn row(&self, n: usize) -> Option<&ReportRow<T>> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Closed-form `μ_os` when every source is normal and the rule is the mean.
pub fn closed_form_mu_os<T: Scalar>(config: &ScenarioConfig<T>, sizes: &[usize]) -> Option<T> {
    let mut means = Vec::with_capacity(config.k());
    let mut variances = Vec::with_capacity(config.k());
    for s in &config.sources {
        match s.distribution {
            DistributionSpec::Normal { mean, variance } => {
                means.push(mean);
                variances.push(variance);
            }
            _ => return None,
        }
    }
    let props = Proportions::from_counts(sizes).ok()?;
    let params = NormalSourceParams::new(means, variances, props, sizes.iter().sum()).ok()?;
    Some(match config.loss {
        LossKind::Squared => normal_oos_squared(&params),
        LossKind::Absolute => normal_oos_absolute(&params),
    })
}

/// `μ̂_os` for every replicate at size `n`, in replicate order.
///
/// Replicates run on the current rayon pool; each draws from its own
/// stream, so the output does not depend on the number of threads.
pub fn replicate_estimates<T: Variate>(config: &ScenarioConfig<T>, n: usize) -> Result<Vec<T>> {
    let sizes = config.allocate(n)?;
    let samplers = build_samplers(config)?;
    (0..config.reps_for(n))
        .into_par_iter()
        .map(|rep| {
            let mut rng = replicate_rng(config.master_seed, n, rep);
            let ds = sample_with_sizes(&samplers, &sizes, &mut rng)?;
            Ok(oos_estimate(&ds, &config.rule, &config.loss)?.total)
        })
        .collect()
}

/// Runs the scenario over its whole `n_grid`.
pub fn run_monte_carlo<T: Variate>(config: &ScenarioConfig<T>) -> Result<SimulationReport<T>> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.n_grid.len());
    for &n in &config.n_grid {
        let values = replicate_estimates(config, n)?;
        let reps = values.len();
        if reps < 2 {
            return Err(Error::TooFewReplicates { min: 2, got: reps });
        }
        let m = mean(&values).expect("nonempty");
        let var = sample_variance(&values).expect("at least two values");
        let sizes = config.allocate(n)?;
        let mu_os = closed_form_mu_os(config, &sizes);
        let bias2 = mu_os.map(|mu| (m - mu) * (m - mu));
        rows.push(ReportRow {
            table: config.name.clone(),
            loss: config.loss.to_string(),
            n,
            reps,
            mean: m,
            var,
            se: (var / T::of_usize(reps)).sqrt(),
            mu_os,
            bias2,
            mse: bias2.map(|b| b + var),
            sizes,
        });
    }
    Ok(SimulationReport { name: config.name.clone(), loss: config.loss, rows })
}
