//! Independent oracles shared by the integration and acceptance suites.

#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub const TABLE1_MEANS: [f64; 3] = [0.0, 2.0, 5.0];
pub const TABLE1_VARS: [f64; 3] = [9.0, 1.0, 5.0];
pub const TABLE1_P: [f64; 3] = [0.2, 0.3, 0.5];

pub fn table1_sizes(n: usize) -> Vec<usize> {
    TABLE1_P.iter().map(|p| (p * n as f64).round() as usize).collect()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

/// `Cov(A², B²)` for jointly normal `(A, B)` by Isserlis.
fn square_cov(ma: f64, mb: f64, cab: f64) -> f64 {
    2.0 * cab * cab + 4.0 * ma * mb * cab
}

/// A residual `Z_i - Z̄_l` as coefficients on every observation.
struct Residual {
    coef: Vec<f64>,
    mean: f64,
}

fn residual(sizes: &[usize], means: &[f64], j: usize, i: usize, l: usize) -> Residual {
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| Some(std::mem::replace(acc, *acc + s))).collect();
    let mut coef = vec![0.0; sizes.iter().sum()];
    coef[offsets[j] + i] += 1.0;
    for t in 0..sizes[l] {
        coef[offsets[l] + t] -= 1.0 / sizes[l] as f64;
    }
    Residual { coef, mean: means[j] - means[l] }
}

/// Exact `Var(μ̂_os)` for normal sources, mean rules and squared loss.
///
/// Writes the estimator as `Σ w_{jl} Σ_{i∈S_j} (Z_i - Z̄_l)²` with
/// `w_{jl} = n_l / (n (n - n_j))`, and sums `w w' Cov` over every pair of
/// terms. Within a block pair only whether `i == i'` matters, so one
/// representative per class is scored and multiplied by its count.
pub fn block_sum_variance(means: &[f64], vars: &[f64], sizes: &[usize]) -> f64 {
    let k = sizes.len();
    let n: usize = sizes.iter().sum();
    let obs_var: Vec<f64> = (0..k).flat_map(|j| std::iter::repeat_n(vars[j], sizes[j])).collect();
    let w = |j: usize, l: usize| sizes[l] as f64 / (n as f64 * (n - sizes[j]) as f64);
    let cov = |a: &Residual, b: &Residual| -> f64 {
        a.coef.iter().zip(&b.coef).zip(&obs_var).map(|((x, y), v)| x * y * v).sum()
    };

    let mut total = 0.0;
    for j in 0..k {
        for l in (0..k).filter(|&l| l != j) {
            for j2 in 0..k {
                for l2 in (0..k).filter(|&l2| l2 != j2) {
                    let a = residual(sizes, means, j, 0, l);
                    let ww = w(j, l) * w(j2, l2);
                    if j == j2 {
                        let same = residual(sizes, means, j2, 0, l2);
                        total += ww * sizes[j] as f64 * square_cov(a.mean, same.mean, cov(&a, &same));
                        if sizes[j] > 1 {
                            let other = residual(sizes, means, j2, 1, l2);
                            let pairs = (sizes[j] * (sizes[j] - 1)) as f64;
                            total += ww * pairs * square_cov(a.mean, other.mean, cov(&a, &other));
                        }
                    } else {
                        let b = residual(sizes, means, j2, 0, l2);
                        let pairs = (sizes[j] * sizes[j2]) as f64;
                        total += ww * pairs * square_cov(a.mean, b.mean, cov(&a, &b));
                    }
                }
            }
        }
    }
    total
}

/// One Monte Carlo covariance estimate with its standard error.
#[derive(Debug, Clone)]
pub struct McCov {
    pub name: &'static str,
    pub idx: Vec<usize>,
    pub estimate: f64,
    pub se: f64,
}

fn mc_cov(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let prods: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect();
    let c = prods.iter().sum::<f64>() / m;
    let v = prods.iter().map(|p| (p - c) * (p - c)).sum::<f64>() / (m - 1.0);
    (c * m / (m - 1.0), (v / m).sqrt())
}

/// Monte Carlo estimates of every second-moment component.
///
/// Each draw simulates, per source `j`, two observations `Z_j1, Z_j2` and the
/// mean of the other `n_j - 2`, so `Z̄_j` contains both. Losses
/// `a(j, l, t) = (Z_jt - Z̄_l)²` are then paired as the components require.
pub fn mc_components(means: &[f64], vars: &[f64], sizes: &[usize], draws: usize, seed: u64) -> Vec<McCov> {
    let k = sizes.len();
    assert!(sizes.iter().all(|&s| s >= 3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let std = Normal::new(0.0, 1.0).unwrap();
    let idx = |j: usize, l: usize, t: usize| (j * k + l) * 2 + t;
    let mut a = vec![Vec::with_capacity(draws); k * k * 2];
    for _ in 0..draws {
        let mut z = vec![[0.0; 2]; k];
        let mut bar = vec![0.0; k];
        for j in 0..k {
            let sd = vars[j].sqrt();
            let nj = sizes[j] as f64;
            z[j] = [means[j] + sd * std.sample(&mut rng), means[j] + sd * std.sample(&mut rng)];
            let rest = means[j] + sd / (nj - 2.0).sqrt() * std.sample(&mut rng);
            bar[j] = (z[j][0] + z[j][1] + (nj - 2.0) * rest) / nj;
        }
        for j in 0..k {
            for l in 0..k {
                for t in 0..2 {
                    a[idx(j, l, t)].push((z[j][t] - bar[l]).powi(2));
                }
            }
        }
    }

    let mut out = Vec::new();
    let mut push = |name, ix: Vec<usize>, x: &[f64], y: &[f64]| {
        let (estimate, se) = mc_cov(x, y);
        out.push(McCov { name, idx: ix, estimate, se });
    };
    for j in 0..k {
        for l in (0..k).filter(|&l| l != j) {
            push("loss_var", vec![j, l], &a[idx(j, l, 0)], &a[idx(j, l, 0)]);
            push("same_rule", vec![j, l], &a[idx(j, l, 0)], &a[idx(j, l, 1)]);
            push("swapped", vec![j, l], &a[idx(j, l, 0)], &a[idx(l, j, 0)]);
            for x in (0..k).filter(|&x| x != j && x != l) {
                push("same_target", vec![j, l, x], &a[idx(j, l, 0)], &a[idx(j, x, 0)]);
                push("cross_target", vec![j, l, x], &a[idx(j, x, 0)], &a[idx(l, x, 0)]);
                push("entangled", vec![j, l, x], &a[idx(j, x, 0)], &a[idx(l, j, 0)]);
            }
        }
    }
    out
}
