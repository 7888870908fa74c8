use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimator::oos_estimate;
use crate::model::{DecisionRule, Loss, MultiSourceDataset};
use crate::scalar::{sample_variance, Scalar};
use crate::simulation::stream_rng;

/// Fewest bootstrap replicates accepted.
pub const MIN_BOOTSTRAP: usize = 100;

fn check<T: Scalar>(dataset: &MultiSourceDataset<T>, b: usize) -> Result<()> {
    if b < MIN_BOOTSTRAP {
        return Err(Error::TooFewBootstrap { min: MIN_BOOTSTRAP, got: b });
    }
    for (label, xs) in dataset.sources() {
        if xs.len() < 2 {
            return Err(Error::TooFewPerSource { source_label: label.to_string(), needed: 2, got: xs.len() });
        }
    }
    Ok(())
}

/// `μ̂_os` on `b` stratified resamples: each source is resampled with
/// replacement to its own size. Replicate `r` draws from stream `r` of
/// `seed`, so the output does not depend on thread scheduling. Sources are
/// sorted first, so the output is also invariant to the order of
/// observations within a source.
pub fn bootstrap_replicates<T, R, L>(
    dataset: &MultiSourceDataset<T>,
    rule: &R,
    loss: &L,
    b: usize,
    seed: u64,
) -> Result<Vec<T>>
where
    T: Scalar,
    R: DecisionRule<T> + ?Sized,
    L: Loss<T> + ?Sized,
{
    check(dataset, b)?;
    let sorted: Vec<Vec<T>> = dataset
        .sources()
        .map(|(_, xs)| {
            let mut v = xs.to_vec();
            v.sort_by(|a, b| a.partial_cmp(b).expect("finite observations"));
            v
        })
        .collect();
    (0..b)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, r as u64);
            let groups = sorted
                .iter()
                .map(|xs| (0..xs.len()).map(|_| xs[rng.random_range(0..xs.len())]).collect())
                .collect();
            Ok(oos_estimate(&dataset.with_sources(groups)?, rule, loss)?.total)
        })
        .collect()
}

/// Bootstrap variance of `μ̂_os`, `b - 1` divisor.
pub fn bootstrap_variance<T, R, L>(
    dataset: &MultiSourceDataset<T>,
    rule: &R,
    loss: &L,
    b: usize,
    seed: u64,
) -> Result<T>
where
    T: Scalar,
    R: DecisionRule<T> + ?Sized,
    L: Loss<T> + ?Sized,
{
    let reps = bootstrap_replicates(dataset, rule, loss, b, seed)?;
    Ok(sample_variance(&reps).expect("b >= 2"))
}
