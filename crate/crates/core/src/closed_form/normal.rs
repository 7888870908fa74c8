use crate::error::{Error, Result};
use crate::model::Proportions;
use crate::scalar::Scalar;

use super::special::folded_normal_mean;

/// Sources `F_j = N(μ_j, σ_j²)` with proportions `p` and total size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalSourceParams<T> {
    means: Vec<T>,
    variances: Vec<T>,
    proportions: Proportions<T>,
    n: usize,
}

impl<T: Scalar> NormalSourceParams<T> {
    pub fn new(means: Vec<T>, variances: Vec<T>, proportions: Proportions<T>, n: usize) -> Result<Self> {
        let k = proportions.k();
        if means.len() != k || variances.len() != k {
            return Err(Error::InvalidParameters(format!(
                "length mismatch: {} means, {} variances, {} proportions",
                means.len(),
                variances.len(),
                k
            )));
        }
        if let Some(m) = means.iter().find(|m| !m.is_finite()) {
            return Err(Error::InvalidParameters(format!("non-finite mean {m}")));
        }
        if let Some(v) = variances.iter().find(|&&v| !(v > T::zero() && v.is_finite())) {
            return Err(Error::InvalidParameters(format!("variance {v} must be positive")));
        }
        let size = T::of_usize(n);
        if let Some(j) = (0..k).find(|&j| size * proportions.p()[j] < T::one() - T::unit_tolerance()) {
            return Err(Error::InvalidParameters(format!(
                "n * p_{} = {} < 1",
                j + 1,
                size * proportions.p()[j]
            )));
        }
        Ok(Self { means, variances, proportions, n })
    }

    /// Same sources at another total size.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.means.clone(), self.variances.clone(), self.proportions.clone(), n)
    }

    pub fn k(&self) -> usize {
        self.means.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn means(&self) -> &[T] {
        &self.means
    }

    pub fn variances(&self) -> &[T] {
        &self.variances
    }

    pub fn proportions(&self) -> &Proportions<T> {
        &self.proportions
    }

    /// `σ_l² / (n p_l)`: variance of the source-`l` sample mean.
    pub(crate) fn rule_variance(&self, l: usize) -> T {
        self.variances[l] / (T::of_usize(self.n) * self.proportions.p()[l])
    }

    /// `Σ_j od_j Σ_{l≠j} p_l e(j, l)`.
    fn odds_weighted(&self, e: impl Fn(usize, usize) -> T) -> T {
        let (p, od) = (self.proportions.p(), self.proportions.od());
        let k = self.k();
        (0..k)
            .map(|j| od[j] * (0..k).filter(|&l| l != j).map(|l| p[l] * e(j, l)).sum::<T>())
            .sum()
    }
}

/// Out-of-source error under squared loss with mean rules:
///
/// ```text
/// Σ_j p_j σ_j² + Σ_j od_j Σ_{l≠j} p_l (μ_j - μ_l)² + (1/n) Σ_j od_j Σ_{l≠j} σ_l²
/// ```
pub fn normal_oos_squared<T: Scalar>(params: &NormalSourceParams<T>) -> T {
    let p = params.proportions.p();
    let od = params.proportions.od();
    let (mu, var) = (&params.means, &params.variances);
    let k = params.k();
    let within: T = (0..k).map(|j| p[j] * var[j]).sum();
    let between = params.odds_weighted(|j, l| (mu[j] - mu[l]) * (mu[j] - mu[l]));
    let rule_noise: T = (0..k)
        .map(|j| od[j] * (0..k).filter(|&l| l != j).map(|l| var[l]).sum::<T>())
        .sum();
    within + between + rule_noise / T::of_usize(params.n)
}

/// Out-of-source error under absolute loss with mean rules:
/// `Σ_j od_j Σ_{l≠j} p_l E|N(μ_j - μ_l, σ_j² + σ_l²/(n p_l))|`.
pub fn normal_oos_absolute<T: Scalar>(params: &NormalSourceParams<T>) -> T {
    let (mu, var) = (&params.means, &params.variances);
    params.odds_weighted(|j, l| {
        let sd = (var[j] + params.rule_variance(l)).sqrt();
        folded_normal_mean(mu[j] - mu[l], sd)
    })
}

/// Expected pooled-complement statistic under squared loss: each source is
/// scored against the mean of all other sources pooled, weighted by `p_j`.
///
/// `Σ_j p_j [σ_j² + Σ_{l≠j} n_l σ_l²/(n-n_j)² + (μ_j - Σ_{l≠j} n_l μ_l/(n-n_j))²]`
pub fn normal_cvs_squared<T: Scalar>(params: &NormalSourceParams<T>) -> T {
    let p = params.proportions.p();
    let (mu, var) = (&params.means, &params.variances);
    let k = params.k();
    (0..k)
        .map(|j| {
            // n_l / (n - n_j) = p_l / (1 - p_j)
            let rest = T::one() - p[j];
            let pooled_mean: T = (0..k).filter(|&l| l != j).map(|l| p[l] / rest * mu[l]).sum();
            let pooled_var: T = (0..k)
                .filter(|&l| l != j)
                .map(|l| p[l] * var[l] / (rest * rest * T::of_usize(params.n)))
                .sum();
            let gap = mu[j] - pooled_mean;
            p[j] * (var[j] + pooled_var + gap * gap)
        })
        .sum()
}
