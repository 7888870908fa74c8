use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{mean, sample_variance, Scalar};
use crate::simulation::{replicate_rng, Variate};

/// Replicates required by the `s²` variance studies.
pub const MIN_STUDY_REPS: usize = 100;

/// Finite discrete distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscretePmf<T> {
    pub support: Vec<T>,
    pub probabilities: Vec<T>,
}

impl<T: Scalar> DiscretePmf<T> {
    pub fn total_probability(&self) -> T {
        self.probabilities.iter().copied().sum()
    }

    /// `E[(Y - c)^order]` by direct summation.
    pub fn moment_about(&self, c: T, order: i32) -> T {
        self.support.iter().zip(&self.probabilities).map(|(&y, &p)| p * (y - c).powi(order)).sum()
    }

    pub fn mean(&self) -> T {
        self.moment_about(T::zero(), 1)
    }

    pub fn variance(&self) -> T {
        self.moment_about(self.mean(), 2)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T
    where
        T: Variate,
    {
        let u = T::unit(rng);
        let mut acc = T::zero();
        for (&y, &p) in self.support.iter().zip(&self.probabilities) {
            acc += p;
            if u < acc {
                return y;
            }
        }
        *self.support.last().expect("nonempty support")
    }
}

fn check_moments<T: Scalar>(sigma2: T, c: T) -> Result<()> {
    if c > T::zero() && c < sigma2 && sigma2.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidMoments { sigma2: sigma2.to_f64().unwrap_or(f64::NAN), c: c.to_f64().unwrap_or(f64::NAN) })
    }
}

/// Four-point symmetric distribution with `d = sigma2 - c`:
/// `±sqrt(d)/2` with probability `(n²-1)/(2n²-1/2)` each and `±n d` with
/// probability `3/(8n²-2)` each.
///
/// Its variance is `(d/4)(8n²-8)/(8n²-2) + 3n²d²/(4n²-1)`, which equals `d`
/// only when `d = 1`; callers should use [`DiscretePmf::variance`] rather
/// than assume `d`. The rare outer points make the fourth moment grow
/// like `n²`, which is what keeps `Var(s²)` from vanishing.
pub fn pathological_pmf<T: Scalar>(n: usize, sigma2: T, c: T) -> Result<DiscretePmf<T>> {
    check_moments(sigma2, c)?;
    if n < 2 {
        return Err(Error::TooFewObservations { needed: 2, got: n });
    }
    let d = sigma2 - c;
    let nn = T::of_usize(n);
    let n2 = nn * nn;
    let inner = (n2 - T::one()) / (T::lit(2.0) * n2 - T::lit(0.5));
    let outer = T::lit(3.0) / (T::lit(8.0) * n2 - T::lit(2.0));
    let half_root = d.sqrt() / T::lit(2.0);
    Ok(DiscretePmf {
        support: vec![-nn * d, -half_root, half_root, nn * d],
        probabilities: vec![outer, inner, inner, outer],
    })
}

/// Exact `Var(s²)` for `n` iid draws from [`pathological_pmf`], from the
/// pmf's central moments: `μ4/n - σ⁴(n-3)/(n(n-1))`.
pub fn pathological_var_s2<T: Scalar>(n: usize, sigma2: T, c: T) -> Result<T> {
    let pmf = pathological_pmf(n, sigma2, c)?;
    let m = pmf.mean();
    let (v, mu4) = (pmf.moment_about(m, 2), pmf.moment_about(m, 4));
    let nn = T::of_usize(n);
    Ok(mu4 / nn - v * v * (nn - T::lit(3.0)) / (nn * (nn - T::one())))
}

/// `X_j = Y_j + ε` with `Y_j` iid from [`pathological_pmf`] and one shared
/// `ε ~ N(mu, c)`: exchangeable with covariance `c` between any two terms.
pub fn pathological_sequence<T: Variate, R: Rng + ?Sized>(n: usize, sigma2: T, c: T, mu: T, rng: &mut R) -> Result<Vec<T>> {
    let pmf = pathological_pmf(n, sigma2, c)?;
    Ok(draw_sequence(&pmf, n, c, mu, rng))
}

fn draw_sequence<T: Variate, R: Rng + ?Sized>(pmf: &DiscretePmf<T>, n: usize, c: T, mu: T, rng: &mut R) -> Vec<T> {
    let eps = mu + c.sqrt() * T::standard_normal(rng);
    (0..n).map(|_| pmf.sample(rng) + eps).collect()
}

/// `s² = Σ (x - x̄)² / (len - 1)`.
pub fn sample_variance_s2<T: Scalar>(xs: &[T]) -> Result<T> {
    sample_variance(xs).ok_or(Error::TooFewObservations { needed: 2, got: xs.len() })
}

/// One row of an `s²` variance study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct S2StudyRow<T> {
    pub n: usize,
    pub reps: usize,
    /// Mean of `s²` over the replicates.
    pub mean_s2: T,
    /// Empirical `Var(s²)`, `reps - 1` divisor.
    pub var_s2: T,
    /// `E(s²)` for the generating process.
    pub expected_s2: T,
    /// Exact `Var(s²)` for the generating process.
    pub exact_var_s2: T,
}

fn study<T, F>(n_grid: &[usize], reps: usize, seed: u64, expected: impl Fn(usize) -> Result<(T, T)>, draw: F) -> Result<Vec<S2StudyRow<T>>>
where
    T: Variate,
    F: Fn(usize, &mut rand_chacha::ChaCha8Rng) -> Vec<T> + Sync,
{
    if reps < MIN_STUDY_REPS {
        return Err(Error::TooFewReplicates { min: MIN_STUDY_REPS, got: reps });
    }
    n_grid
        .iter()
        .map(|&n| {
            if n < 2 {
                return Err(Error::TooFewObservations { needed: 2, got: n });
            }
            let (expected_s2, exact_var_s2) = expected(n)?;
            let s2: Vec<T> = (0..reps)
                .into_par_iter()
                .map(|rep| {
                    let xs = draw(n, &mut replicate_rng(seed, n, rep));
                    sample_variance(&xs).expect("n >= 2")
                })
                .collect();
            Ok(S2StudyRow {
                n,
                reps,
                mean_s2: mean(&s2).expect("reps > 0"),
                var_s2: sample_variance(&s2).expect("reps > 1"),
                expected_s2,
                exact_var_s2,
            })
        })
        .collect()
}

/// Empirical `Var(s²)` on the pathological sequence for each `n`.
/// Grows roughly linearly in `n` instead of vanishing.
pub fn var_s2_study<T: Variate>(n_grid: &[usize], reps: usize, sigma2: T, c: T, mu: T, seed: u64) -> Result<Vec<S2StudyRow<T>>> {
    check_moments(sigma2, c)?;
    study(
        n_grid,
        reps,
        seed,
        |n| Ok((pathological_pmf(n, sigma2, c)?.variance(), pathological_var_s2(n, sigma2, c)?)),
        |n, rng| {
            let pmf = pathological_pmf(n, sigma2, c).expect("validated");
            draw_sequence(&pmf, n, c, mu, rng)
        },
    )
}

/// Control study on iid `N(0, 1)` data, where `Var(s²) = 2/(n-1)`.
pub fn var_s2_normal_control<T: Variate>(n_grid: &[usize], reps: usize, seed: u64) -> Result<Vec<S2StudyRow<T>>> {
    study(
        n_grid,
        reps,
        seed,
        |n| Ok((T::one(), T::lit(2.0) / T::of_usize(n - 1))),
        |n, rng| (0..n).map(|_| T::standard_normal(rng)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_sums_to_one() {
        for n in [2, 3, 10, 50, 1000] {
            for (s2, c) in [(2.0_f64, 1.0), (5.0, 0.5), (1.01, 1.0)] {
                let pmf = pathological_pmf(n, s2, c).unwrap();
                assert!((pmf.total_probability() - 1.0).abs() < 1e-14);
                assert!(pmf.mean().abs() < 1e-13 * n as f64);
            }
        }
    }

    #[test]
    fn pmf_variance_by_direct_summation() {
        // d = 1: the variance is exactly d.
        let v = pathological_pmf(10, 2.0_f64, 1.0).unwrap().variance();
        assert!((v - 1.0).abs() < 1e-14);
        // d = 2: (2/4)(792/798) + 3·100·4/399 = 3.503759398...
        let v = pathological_pmf(10, 3.0_f64, 1.0).unwrap().variance();
        let want = 0.5 * 792.0 / 798.0 + 1200.0 / 399.0;
        assert!((v - want).abs() < 1e-13);
        assert!((v - 3.503_759_398_496_24).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_moments() {
        assert!(matches!(pathological_pmf(10, 1.0_f64, 1.0), Err(Error::InvalidMoments { .. })));
        assert!(matches!(pathological_pmf(10, 1.0_f64, 0.0), Err(Error::InvalidMoments { .. })));
        assert!(matches!(pathological_pmf(10, 1.0_f64, 2.0), Err(Error::InvalidMoments { .. })));
    }

    #[test]
    fn s2_examples() {
        assert_eq!(sample_variance_s2(&[1.0_f64, 1.0, 1.0]), Ok(0.0));
        assert_eq!(sample_variance_s2(&[0.0_f64, 2.0]), Ok(2.0));
        assert_eq!(sample_variance_s2(&[0.0_f64]), Err(Error::TooFewObservations { needed: 2, got: 1 }));
    }

    #[test]
    fn shared_shift_cancels_in_s2() {
        let mut rng = replicate_rng(11, 40, 0);
        let pmf = pathological_pmf(40, 2.0_f64, 1.0).unwrap();
        let ys: Vec<f64> = (0..40).map(|_| pmf.sample(&mut rng)).collect();
        let xs: Vec<f64> = ys.iter().map(|y| y + 3.7).collect();
        let (sx, sy) = (sample_variance_s2(&xs).unwrap(), sample_variance_s2(&ys).unwrap());
        assert!((sx - sy).abs() < 1e-12 * sy.max(1.0));
    }

    #[test]
    fn study_requires_enough_reps() {
        assert_eq!(
            var_s2_study(&[10], 50, 2.0_f64, 1.0, 0.0, 1).unwrap_err(),
            Error::TooFewReplicates { min: 100, got: 50 }
        );
    }
}
