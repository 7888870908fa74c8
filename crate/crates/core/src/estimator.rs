//! Empirical out-of-source error: pairwise source errors, the unbiased
//! estimator and the pooled-complement ("by source" cross-validation)
//! comparison statistic.

use serde::Serialize;

use crate::error::Result;
use crate::model::{DecisionRule, Loss, MultiSourceDataset, Proportions};
use crate::scalar::Scalar;

/// `k x k` matrix of `ê_{j;l}`: the mean loss of source-`j` targets against
/// the rule fit on source `l`. The diagonal is undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseErrorMatrix<T> {
    k: usize,
    cells: Vec<Option<T>>,
}

impl<T: Scalar> PairwiseErrorMatrix<T> {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `ê_{j;l}`; `None` on the diagonal.
    pub fn get(&self, j: usize, l: usize) -> Option<T> {
        self.cells[j * self.k + l]
    }

    /// Row `j` with `None` at position `j`.
    pub fn row(&self, j: usize) -> &[Option<T>] {
        &self.cells[j * self.k..(j + 1) * self.k]
    }
}

/// Result of [`oos_estimate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OosEstimate<T> {
    /// `μ̂_os`.
    pub total: T,
    /// Plug-in per-source errors `ê_j`.
    pub per_source: Vec<T>,
    pub pairwise: PairwiseErrorMatrix<T>,
}

/// Loss sums `Σ_{i∈S_j} L(Z_i, d̂_l)` for every `j != l`, row-major.
///
/// Each source is traversed in sorted order so the sums, and everything
/// derived from them, do not depend on the input order within a source.
fn loss_sums<T, R, L>(dataset: &MultiSourceDataset<T>, rule: &R, loss: &L) -> Result<Vec<T>>
where
    T: Scalar,
    R: DecisionRule<T> + ?Sized,
    L: Loss<T> + ?Sized,
{
    let k = dataset.k();
    let sorted: Vec<Vec<T>> = (0..k).map(|j| sorted_copy(dataset.source(j))).collect();
    // One fit per training source, reused for every test source.
    let decisions = sorted.iter().map(|s| rule.fit(s)).collect::<Result<Vec<T>>>()?;
    let mut sums = vec![T::zero(); k * k];
    for (j, targets) in sorted.iter().enumerate() {
        for (l, &d) in decisions.iter().enumerate() {
            if l != j {
                sums[j * k + l] = targets.iter().map(|&z| loss.evaluate(z, d)).sum();
            }
        }
    }
    Ok(sums)
}

fn sorted_copy<T: Scalar>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite observations"));
    v
}

fn matrix_from_sums<T: Scalar>(sums: &[T], sizes: &[usize]) -> PairwiseErrorMatrix<T> {
    let k = sizes.len();
    let cells = (0..k * k)
        .map(|idx| {
            let (j, l) = (idx / k, idx % k);
            (j != l).then(|| sums[idx] / T::of_usize(sizes[j]))
        })
        .collect();
    PairwiseErrorMatrix { k, cells }
}

/// Pairwise errors `ê_{j;l} = (1/n_j) Σ_{i∈S_j} L(Z_i, d̂_l)`.
pub fn pairwise_errors<T, R, L>(
    dataset: &MultiSourceDataset<T>,
    rule: &R,
    loss: &L,
) -> Result<PairwiseErrorMatrix<T>>
where
    T: Scalar,
    R: DecisionRule<T> + ?Sized,
    L: Loss<T> + ?Sized,
{
    let sums = loss_sums(dataset, rule, loss)?;
    Ok(matrix_from_sums(&sums, &dataset.sizes()))
}

/// The unbiased out-of-source error estimator
///
/// ```text
/// μ̂_os = (1/n) Σ_j 1/(n - n_j) Σ_{l≠j} n_l Σ_{i∈S_j} L(Z_i, d̂_l)
/// ```
///
/// together with the per-source errors `ê_j = (1/(1-p_j)) Σ_{l≠j} p_l ê_{j;l}`
/// and the pairwise matrix. Outer sums run in canonical source order.
pub fn oos_estimate<T, R, L>(
    dataset: &MultiSourceDataset<T>,
    rule: &R,
    loss: &L,
) -> Result<OosEstimate<T>>
where
    T: Scalar,
    R: DecisionRule<T> + ?Sized,
    L: Loss<T> + ?Sized,
{
    let k = dataset.k();
    let sizes = dataset.sizes();
    let n = dataset.n();
    let sums = loss_sums(dataset, rule, loss)?;

    let mut total = T::zero();
    for j in 0..k {
        let inner: T = (0..k)
            .filter(|&l| l != j)
            .map(|l| T::of_usize(sizes[l]) * sums[j * k + l])
            .sum();
        total += inner / T::of_usize(n - sizes[j]);
    }
    total /= T::of_usize(n);

    let pairwise = matrix_from_sums(&sums, &sizes);
    let props = Proportions::from_counts(&sizes)?;
    let p = props.p();
    let per_source = (0..k)
        .map(|j| {
            let s: T = (0..k)
                .filter(|&l| l != j)
                .map(|l| p[l] * pairwise.get(j, l).expect("off-diagonal"))
                .sum();
            s / (T::one() - p[j])
        })
        .collect();

    Ok(OosEstimate { total, per_source, pairwise })
}

/// Pooled-complement statistic: for each source `j` the rule is fit on
/// all other sources pooled and scored on source `j`; the per-source means
/// are combined with weights `p_j`.
///
/// For balanced sources the weights are `1/k`, the usual "cross-validate by
/// source" arrangement. Unbalanced weighting by `p_j` is this crate's
/// choice; no canonical definition exists for that case.
pub fn cvs_estimate<T, R, L>(dataset: &MultiSourceDataset<T>, rule: &R, loss: &L) -> Result<T>
where
    T: Scalar,
    R: DecisionRule<T> + ?Sized,
    L: Loss<T> + ?Sized,
{
    let k = dataset.k();
    let props = Proportions::from_dataset(dataset);
    let mut total = T::zero();
    for j in 0..k {
        let pooled: Vec<T> = (0..k)
            .filter(|&l| l != j)
            .flat_map(|l| dataset.source(l).iter().copied())
            .collect();
        let d = rule.fit(&sorted_copy(&pooled))?;
        let targets = sorted_copy(dataset.source(j));
        let mean_loss = targets.iter().map(|&z| loss.evaluate(z, d)).sum::<T>()
            / T::of_usize(targets.len());
        total += props.p()[j] * mean_loss;
    }
    Ok(total)
}
