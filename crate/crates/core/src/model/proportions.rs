use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::MultiSourceDataset;

/// Source proportions `p_j` and odds `od_j = p_j / (1 - p_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Proportions<T> {
    p: Vec<T>,
    od: Vec<T>,
}

impl<T: Scalar> Proportions<T> {
    /// Proportions `n_j / n` from per-source counts.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        let n: usize = counts.iter().sum();
        if counts.len() < 2 {
            return Err(Error::SingleSource { found: counts.len() });
        }
        if counts.contains(&0) {
            return Err(Error::InvalidProportions("every source count must be positive".into()));
        }
        let total = T::of_usize(n);
        Self::validated(counts.iter().map(|&c| T::of_usize(c) / total).collect())
    }

    /// Proportions given directly; they must lie in (0, 1) and sum to one.
    pub fn from_weights(p: Vec<T>) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::SingleSource { found: p.len() });
        }
        let sum: T = p.iter().copied().sum();
        if (sum - T::one()).abs() > T::unit_tolerance() {
            return Err(Error::InvalidProportions(format!("proportions sum to {sum}, not 1")));
        }
        Self::validated(p)
    }

    fn validated(p: Vec<T>) -> Result<Self> {
        if let Some(bad) = p.iter().find(|&&x| !(x > T::zero() && x < T::one())) {
            return Err(Error::InvalidProportions(format!("p = {bad} outside (0, 1)")));
        }
        let od = p.iter().map(|&x| x / (T::one() - x)).collect();
        Ok(Self { p, od })
    }

    pub fn from_dataset(dataset: &MultiSourceDataset<T>) -> Self {
        Self::from_counts(&dataset.sizes()).expect("dataset invariants guarantee valid counts")
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }

    pub fn od(&self) -> &[T] {
        &self.od
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-15 * b.abs().max(1.0)
    }

    #[test]
    fn balanced_pair() {
        let pr = Proportions::<f64>::from_counts(&[2, 2]).unwrap();
        assert_eq!(pr.p(), &[0.5, 0.5]);
        assert_eq!(pr.od(), &[1.0, 1.0]);
    }

    #[test]
    fn simulation_study_odds() {
        let pr = Proportions::<f64>::from_counts(&[20, 30, 50]).unwrap();
        let want_p = [0.2, 0.3, 0.5];
        let want_od = [0.25, 3.0 / 7.0, 1.0];
        for j in 0..3 {
            assert!(close(pr.p()[j], want_p[j]));
            assert!(close(pr.od()[j], want_od[j]));
        }
    }

    #[test]
    fn lopsided_counts() {
        let pr = Proportions::<f64>::from_counts(&[1, 99]).unwrap();
        assert!(close(pr.p()[0], 0.01));
        assert!(close(pr.od()[0], 1.0 / 99.0));
        assert!(close(pr.od()[1], 99.0));
    }

    #[test]
    fn weights_must_sum_to_one_and_stay_inside_unit_interval() {
        assert!(Proportions::from_weights(vec![0.2_f64, 0.3, 0.5]).is_ok());
        assert!(Proportions::from_weights(vec![0.1_f64, 0.2, 0.7]).is_ok());
        assert!(Proportions::from_weights(vec![0.2_f64, 0.3, 0.4]).is_err());
        assert!(Proportions::from_weights(vec![0.0_f64, 1.0]).is_err());
        assert!(Proportions::from_weights(vec![1.0_f64]).is_err());
    }
}
