use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LossKind, MultiSourceDataset, RuleKind, SourceLabel};
use crate::scalar::Scalar;

use super::distribution::{DistributionSpec, Sampler, Variate};
use super::seed::replicate_rng;

/// How a total size `n` is split into per-source sizes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Allocation {
    /// `n_j = n p_j` must be an integer for every source.
    #[default]
    Strict,
    /// Largest-remainder rounding; ties go to the earlier source.
    Lenient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpec<T> {
    pub label: SourceLabel,
    pub distribution: DistributionSpec<T>,
    pub proportion: T,
}

impl<T> SourceSpec<T> {
    pub fn new(label: impl Into<SourceLabel>, distribution: DistributionSpec<T>, proportion: T) -> Self {
        Self { label: label.into(), distribution, proportion }
    }
}

/// Replicate count override for large sample sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepsCap {
    /// Applies to every `n >= min_n`.
    pub min_n: usize,
    pub max_reps: usize,
}

/// A Monte Carlo scenario: sources, loss, rule and the sizes to simulate.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig<T> {
    pub name: String,
    pub sources: Vec<SourceSpec<T>>,
    pub loss: LossKind,
    pub rule: RuleKind,
    pub n_grid: Vec<usize>,
    pub reps: usize,
    pub master_seed: u64,
    pub allocation: Allocation,
    pub reps_cap: Option<RepsCap>,
}

impl<T: Scalar> ScenarioConfig<T> {
    /// Scenario with the mean rule, strict allocation and no reps cap.
    /// Sources are put in canonical label order.
    pub fn new(
        name: impl Into<String>,
        mut sources: Vec<SourceSpec<T>>,
        loss: LossKind,
        n_grid: Vec<usize>,
        reps: usize,
        master_seed: u64,
    ) -> Self {
        sources.sort_by(|a, b| a.label.cmp(&b.label));
        Self {
            name: name.into(),
            sources,
            loss,
            rule: RuleKind::Mean,
            n_grid,
            reps,
            master_seed,
            allocation: Allocation::Strict,
            reps_cap: None,
        }
    }

    pub fn k(&self) -> usize {
        self.sources.len()
    }

    pub fn proportions(&self) -> Vec<T> {
        self.sources.iter().map(|s| s.proportion).collect()
    }

    /// Replicates used at size `n`.
    pub fn reps_for(&self, n: usize) -> usize {
        match self.reps_cap {
            Some(cap) if n >= cap.min_n => self.reps.min(cap.max_reps),
            _ => self.reps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sources.len() < 2 {
            return Err(Error::SingleSource { found: self.sources.len() });
        }
        if let Some(w) = self.sources.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(Error::DuplicateSource(w[0].label.to_string()));
        }
        for s in &self.sources {
            s.distribution.validate()?;
        }
        crate::model::Proportions::from_weights(self.proportions())?;
        if self.n_grid.is_empty() {
            return Err(Error::InvalidParameters("n_grid is empty".into()));
        }
        if self.reps < 2 {
            return Err(Error::TooFewReplicates { min: 2, got: self.reps });
        }
        if let Some(cap) = self.reps_cap {
            if cap.max_reps < 2 {
                return Err(Error::TooFewReplicates { min: 2, got: cap.max_reps });
            }
        }
        for &n in &self.n_grid {
            self.allocate(n)?;
        }
        Ok(())
    }

    /// Per-source sizes for total size `n`.
    pub fn allocate(&self, n: usize) -> Result<Vec<usize>> {
        allocate(&self.proportions(), n, self.allocation)
    }
}

/// Splits `n` according to `p`. Every resulting size must be positive.
pub fn allocate<T: Scalar>(p: &[T], n: usize, mode: Allocation) -> Result<Vec<usize>> {
    let size = T::of_usize(n);
    let exact: Vec<T> = p.iter().map(|&pj| pj * size).collect();
    let sizes = match mode {
        Allocation::Strict => {
            let tol = T::lit(1e-9) * size.max(T::one());
            exact
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    let r = x.round();
                    if (x - r).abs() > tol {
                        Err(Error::NonIntegralAllocation { n, index: j + 1, product: x.to_f64().unwrap_or(f64::NAN) })
                    } else {
                        Ok(r.to_usize().unwrap_or(0))
                    }
                })
                .collect::<Result<Vec<_>>>()?
        }
        Allocation::Lenient => {
            let mut sizes: Vec<usize> = exact.iter().map(|x| x.floor().to_usize().unwrap_or(0)).collect();
            let short = n.saturating_sub(sizes.iter().sum());
            let mut order: Vec<usize> = (0..p.len()).collect();
            // Stable sort keeps canonical order among equal remainders.
            order.sort_by(|&a, &b| {
                let ra = exact[a] - exact[a].floor();
                let rb = exact[b] - exact[b].floor();
                rb.partial_cmp(&ra).expect("finite remainders")
            });
            for &j in order.iter().take(short) {
                sizes[j] += 1;
            }
            sizes
        }
    };
    if let Some(j) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidParameters(format!("n = {n} leaves source {} empty", j + 1)));
    }
    Ok(sizes)
}

/// Draws `sizes[j]` iid observations from each source, in canonical order.
pub fn sample_with_sizes<T, R>(
    samplers: &[(SourceLabel, Sampler<T>)],
    sizes: &[usize],
    rng: &mut R,
) -> Result<MultiSourceDataset<T>>
where
    T: Variate,
    R: Rng + ?Sized,
{
    let groups = samplers.iter().zip(sizes).map(|((label, sampler), &count)| {
        let mut values = Vec::with_capacity(count);
        sampler.sample_into(rng, &mut values, count);
        (label.clone(), values)
    });
    MultiSourceDataset::from_groups(groups.collect::<Vec<_>>())
}

pub(crate) fn build_samplers<T: Variate>(config: &ScenarioConfig<T>) -> Result<Vec<(SourceLabel, Sampler<T>)>> {
    config
        .sources
        .iter()
        .map(|s| Ok((s.label.clone(), Sampler::new(&s.distribution)?)))
        .collect()
}

/// One simulated dataset of total size `n`, drawn from the generator of
/// replicate `replicate` under the scenario's master seed.
pub fn sample_dataset<T: Variate>(config: &ScenarioConfig<T>, n: usize, replicate: usize) -> Result<MultiSourceDataset<T>> {
    let sizes = config.allocate(n)?;
    let samplers = build_samplers(config)?;
    let mut rng = replicate_rng(config.master_seed, n, replicate);
    sample_with_sizes(&samplers, &sizes, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_allocation() {
        assert_eq!(allocate(&[0.2_f64, 0.3, 0.5], 100, Allocation::Strict).unwrap(), vec![20, 30, 50]);
        assert_eq!(allocate(&[0.2_f64, 0.3, 0.5], 600, Allocation::Strict).unwrap(), vec![120, 180, 300]);
        assert!(matches!(
            allocate(&[0.5_f64, 0.5], 7, Allocation::Strict),
            Err(Error::NonIntegralAllocation { n: 7, .. })
        ));
    }

    #[test]
    fn lenient_allocation_uses_largest_remainder() {
        assert_eq!(allocate(&[0.5_f64, 0.5], 7, Allocation::Lenient).unwrap(), vec![4, 3]);
        assert_eq!(allocate(&[0.2_f64, 0.3, 0.5], 11, Allocation::Lenient).unwrap(), vec![2, 3, 6]);
        let third = 1.0 / 3.0;
        let s = allocate(&[third, third, 1.0 - 2.0 * third], 10, Allocation::Lenient).unwrap();
        assert_eq!(s.iter().sum::<usize>(), 10);
    }

    #[test]
    fn allocation_rejects_empty_sources() {
        assert!(allocate(&[0.01_f64, 0.99], 10, Allocation::Lenient).is_err());
    }
}
