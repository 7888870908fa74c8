use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::normal::NormalSourceParams;
use super::special::bivariate_square_cov;

/// Dense table of optional entries indexed by up to three source indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
struct Slots<T> {
    k: usize,
    rank: u32,
    cells: Vec<Option<T>>,
}

impl<T: Copy> Slots<T> {
    fn new(k: usize, rank: u32) -> Self {
        Self { k, rank, cells: vec![None; k.pow(rank)] }
    }

    fn index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len() as u32, self.rank);
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.k, "source index {i} out of range for k = {}", self.k);
            acc * self.k + i
        })
    }

    fn get(&self, idx: &[usize]) -> Option<T> {
        self.cells[self.index(idx)]
    }

    fn set(&mut self, idx: &[usize], v: T) {
        let i = self.index(idx);
        self.cells[i] = Some(v);
    }
}

/// Second-moment quantities that determine `Var(μ̂_os)`.
///
/// With `ℓ(Z, l) = L(Z, d̂_l)` and `Z, Z'` independent of the samples unless
/// stated:
///
/// | accessor | quantity |
/// |---|---|
/// | `loss_var(j, l)` | `Var ℓ(Z, l)`, `Z ~ F_j` |
/// | `same_rule(j, l)` | `Cov(ℓ(Z, l), ℓ(Z', l))`, `Z, Z'` iid `F_j` |
/// | `same_target(j, l, l')` | `Cov(ℓ(Z, l), ℓ(Z, l'))`, `Z ~ F_j` |
/// | `cross_target(j, j', l)` | `Cov(ℓ(Z, l), ℓ(Z', l))`, `Z ~ F_j`, `Z' ~ F_j'` |
/// | `entangled(j, j', l)` | `Cov(ℓ(Z, l), ℓ(Z', j))`, `Z ∈ S_j`, `Z' ~ F_j'` |
/// | `swapped(j, j')` | `Cov(ℓ(Z, j'), ℓ(Z', j))`, `Z ∈ S_j`, `Z' ∈ S_j'` |
///
/// Entries exist only for pairwise distinct indices. `theoretical_variance`
/// accepts components from any source (closed forms, Monte Carlo).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentComponents<T> {
    k: usize,
    loss_var: Slots<T>,
    same_rule: Slots<T>,
    same_target: Slots<T>,
    cross_target: Slots<T>,
    entangled: Slots<T>,
    swapped: Slots<T>,
}

fn distinct(idx: &[usize]) -> bool {
    idx.iter().enumerate().all(|(a, x)| idx[a + 1..].iter().all(|y| y != x))
}

impl<T: Scalar> MomentComponents<T> {
    /// Empty components for `k` sources.
    pub fn new(k: usize) -> Self {
        Self {
            k,
            loss_var: Slots::new(k, 2),
            same_rule: Slots::new(k, 2),
            same_target: Slots::new(k, 3),
            cross_target: Slots::new(k, 3),
            entangled: Slots::new(k, 3),
            swapped: Slots::new(k, 2),
        }
    }

    /// Components with every defined entry set to zero.
    pub fn zeros(k: usize) -> Self {
        let mut c = Self::new(k);
        c.fill_with(|_, _| T::zero());
        c
    }

    /// Sets every defined entry to `f(kind, indices)`.
    pub fn fill_with(&mut self, mut f: impl FnMut(&'static str, &[usize]) -> T) {
        for (name, rank) in Self::KINDS {
            for idx in tuples(self.k, rank) {
                if distinct(&idx) {
                    let v = f(name, &idx);
                    self.slots_mut(name).set(&idx, v);
                }
            }
        }
    }

    const KINDS: [(&'static str, u32); 6] = [
        ("loss_var", 2),
        ("same_rule", 2),
        ("same_target", 3),
        ("cross_target", 3),
        ("entangled", 3),
        ("swapped", 2),
    ];

    fn slots(&self, name: &str) -> &Slots<T> {
        match name {
            "loss_var" => &self.loss_var,
            "same_rule" => &self.same_rule,
            "same_target" => &self.same_target,
            "cross_target" => &self.cross_target,
            "entangled" => &self.entangled,
            "swapped" => &self.swapped,
            _ => unreachable!("unknown component {name}"),
        }
    }

    fn slots_mut(&mut self, name: &str) -> &mut Slots<T> {
        match name {
            "loss_var" => &mut self.loss_var,
            "same_rule" => &mut self.same_rule,
            "same_target" => &mut self.same_target,
            "cross_target" => &mut self.cross_target,
            "entangled" => &mut self.entangled,
            "swapped" => &mut self.swapped,
            _ => unreachable!("unknown component {name}"),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn loss_var(&self, j: usize, l: usize) -> Option<T> {
        self.loss_var.get(&[j, l])
    }
    pub fn same_rule(&self, j: usize, l: usize) -> Option<T> {
        self.same_rule.get(&[j, l])
    }
    pub fn same_target(&self, j: usize, l: usize, l2: usize) -> Option<T> {
        self.same_target.get(&[j, l, l2])
    }
    pub fn cross_target(&self, j: usize, j2: usize, l: usize) -> Option<T> {
        self.cross_target.get(&[j, j2, l])
    }
    pub fn entangled(&self, j: usize, j2: usize, l: usize) -> Option<T> {
        self.entangled.get(&[j, j2, l])
    }
    pub fn swapped(&self, j: usize, j2: usize) -> Option<T> {
        self.swapped.get(&[j, j2])
    }

    pub fn set_loss_var(&mut self, j: usize, l: usize, v: T) {
        self.loss_var.set(&[j, l], v)
    }
    pub fn set_same_rule(&mut self, j: usize, l: usize, v: T) {
        self.same_rule.set(&[j, l], v)
    }
    pub fn set_same_target(&mut self, j: usize, l: usize, l2: usize, v: T) {
        self.same_target.set(&[j, l, l2], v)
    }
    pub fn set_cross_target(&mut self, j: usize, j2: usize, l: usize, v: T) {
        self.cross_target.set(&[j, j2, l], v)
    }
    pub fn set_entangled(&mut self, j: usize, j2: usize, l: usize, v: T) {
        self.entangled.set(&[j, j2, l], v)
    }
    pub fn set_swapped(&mut self, j: usize, j2: usize, v: T) {
        self.swapped.set(&[j, j2], v)
    }

    /// Every defined entry as `(kind, indices, value)`, in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, Vec<usize>, Option<T>)> {
        let mut out = Vec::new();
        for (name, rank) in Self::KINDS {
            for idx in tuples(self.k, rank).filter(|i| distinct(i)) {
                let v = self.slots(name).get(&idx);
                out.push((name, idx, v));
            }
        }
        out
    }

    /// First missing entry, formatted as `kind[i, j, ..]`.
    pub(crate) fn first_missing(&self) -> Option<String> {
        self.entries()
            .into_iter()
            .find(|(_, _, v)| v.is_none())
            .map(|(name, idx, _)| format!("{name}{idx:?}"))
    }

    /// Checks finiteness, `V >= 0`, and `|Cov(a, b)| <= sqrt(Var a Var b)`
    /// for every covariance whose two variances are present.
    pub fn check_bounds(&self) -> Result<()> {
        let tol = T::one() + T::lit(1e-9);
        for (name, idx, v) in self.entries() {
            let Some(v) = v else { continue };
            if !v.is_finite() {
                return Err(Error::InvalidParameters(format!("{name}{idx:?} = {v}")));
            }
            let pair = match (name, idx.as_slice()) {
                ("loss_var", _) => {
                    if v < T::zero() {
                        return Err(Error::InvalidParameters(format!("{name}{idx:?} = {v} < 0")));
                    }
                    continue;
                }
                ("same_rule", &[j, l]) => ((j, l), (j, l)),
                ("same_target", &[j, l, l2]) => ((j, l), (j, l2)),
                ("cross_target", &[j, j2, l]) => ((j, l), (j2, l)),
                ("entangled", &[j, j2, l]) => ((j, l), (j2, j)),
                ("swapped", &[j, j2]) => ((j, j2), (j2, j)),
                _ => unreachable!(),
            };
            if let (Some(a), Some(b)) = (self.loss_var(pair.0 .0, pair.0 .1), self.loss_var(pair.1 .0, pair.1 .1)) {
                if v.abs() > (a * b).sqrt() * tol {
                    return Err(Error::InvalidCovariance {
                        cov: v.to_f64().unwrap_or(f64::NAN),
                        var1: a.to_f64().unwrap_or(f64::NAN),
                        var2: b.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        Ok(())
    }
}

fn tuples(k: usize, rank: u32) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(rank)).map(move |mut code| {
        let mut idx = vec![0; rank as usize];
        for slot in idx.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        idx
    })
}

/// Components for normal sources, mean rules and squared loss.
///
/// Every quantity is `Cov(X1², X2²)` for a bivariate normal pair of
/// residuals `target - sample mean`:
///
/// * `loss_var`: `X ~ N(μ_j - μ_l, σ_j² + σ_l²/n_l)` with itself;
/// * `same_rule`: residuals share `Z̄_l`, covariance `σ_l²/n_l`;
/// * `same_target`: residuals share `Z`, covariance `σ_j²`;
/// * `cross_target`: residuals share `Z̄_l`, covariance `σ_l²/n_l`;
/// * `entangled`: `Z ∈ S_j` enters `Z̄_j`, covariance `-σ_j²/n_j`;
/// * `swapped`: covariance `-σ_j²/n_j - σ_j'²/n_j'`.
pub fn normal_components_squared<T: Scalar>(params: &NormalSourceParams<T>) -> Result<MomentComponents<T>> {
    let k = params.k();
    let mu = params.means();
    let var = params.variances();
    let resid_var = |j: usize, l: usize| var[j] + params.rule_variance(l);
    let gap = |a: usize, b: usize| mu[a] - mu[b];

    let mut c = MomentComponents::new(k);
    for idx in tuples(k, 2).filter(|i| distinct(i)) {
        let (j, l) = (idx[0], idx[1]);
        let s = resid_var(j, l);
        c.set_loss_var(j, l, bivariate_square_cov(gap(j, l), gap(j, l), s, s, s)?);
        c.set_same_rule(j, l, bivariate_square_cov(gap(j, l), gap(j, l), s, s, params.rule_variance(l))?);
        let shared = -(params.rule_variance(j) + params.rule_variance(l));
        c.set_swapped(j, l, bivariate_square_cov(gap(j, l), gap(l, j), s, resid_var(l, j), shared)?);
    }
    for idx in tuples(k, 3).filter(|i| distinct(i)) {
        let (a, b, x) = (idx[0], idx[1], idx[2]);
        // same_target(j = a, l = b, l' = x)
        c.set_same_target(a, b, x, bivariate_square_cov(gap(a, b), gap(a, x), resid_var(a, b), resid_var(a, x), var[a])?);
        // cross_target(j = a, j' = b, l = x)
        c.set_cross_target(
            a,
            b,
            x,
            bivariate_square_cov(gap(a, x), gap(b, x), resid_var(a, x), resid_var(b, x), params.rule_variance(x))?,
        );
        // entangled(j = a, j' = b, l = x): ℓ(Z, x) with Z ∈ S_a against ℓ(Z', a), Z' ~ F_b
        c.set_entangled(
            a,
            b,
            x,
            bivariate_square_cov(gap(a, x), gap(b, a), resid_var(a, x), resid_var(b, a), -params.rule_variance(a))?,
        );
    }
    Ok(c)
}
