use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Num, Signed};

use crate::scalar::Scalar;

/// Coefficient field for feasibility checks: exact rationals compare
/// exactly, floats within `1e-12`.
pub trait Coefficient: Num + Signed + Clone + PartialEq + Debug + Display {
    fn negligible(&self) -> bool;
}

impl Coefficient for f64 {
    fn negligible(&self) -> bool {
        self.abs() <= 1e-12
    }
}

impl Coefficient for f32 {
    fn negligible(&self) -> bool {
        self.abs() <= 1e-6
    }
}

impl<I> Coefficient for Ratio<I>
where
    I: num_traits::PrimInt + num_integer::Integer + Signed + Debug + Display,
{
    fn negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Target `t_sigma σ² + t_c C + t_mu μ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTarget<C> {
    pub t_sigma: C,
    pub t_c: C,
    pub t_mu: C,
}

impl<C: Coefficient> MomentTarget<C> {
    pub fn new(t_sigma: C, t_c: C, t_mu: C) -> Self {
        Self { t_sigma, t_c, t_mu }
    }

    /// `Var(X̄) = σ²/n + (n-1)C/n`. Panics if `n == 0`.
    pub fn variance_of_mean(n: u32) -> Self {
        assert!(n > 0, "n must be positive");
        let nn = (0..n).fold(C::zero(), |acc, _| acc + C::one());
        Self::new(C::one() / nn.clone(), (nn.clone() - C::one()) / nn, C::zero())
    }

    /// `σ² - C`, the expectation of `s²`.
    pub fn sigma2_minus_c() -> Self {
        Self::new(C::one(), -C::one(), C::zero())
    }

    pub fn mu_squared() -> Self {
        Self::new(C::zero(), C::zero(), C::one())
    }
}

/// Outcome of [`moment_feasibility`]. When feasible, `coefficients` holds
/// `(a, b)`: total weight on the squares `X_j²` and on the products
/// `X_j X_j'`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityResult<C> {
    pub feasible: bool,
    pub coefficients: Option<(C, C)>,
}

/// Whether the target has an unbiased quadratic estimator, i.e. whether
/// `t_mu = t_sigma + t_c`. The witness is `(a, b) = (t_sigma, t_c)`.
pub fn moment_feasibility<C: Coefficient>(target: &MomentTarget<C>) -> FeasibilityResult<C> {
    let gap = target.t_mu.clone() - target.t_sigma.clone() - target.t_c.clone();
    if gap.negligible() {
        FeasibilityResult { feasible: true, coefficients: Some((target.t_sigma.clone(), target.t_c.clone())) }
    } else {
        FeasibilityResult { feasible: false, coefficients: None }
    }
}

/// Evaluates the symmetric quadratic statistic with total weights `(a, b)`:
/// `(a/n) Σ X_j² + (2b/(n(n-1))) Σ_{j<j'} X_j X_j'`, whose expectation is
/// `a(σ² + μ²) + b(C + μ²)`. `(1, -1)` reproduces `s²` exactly.
pub fn quadratic_estimate<T: Scalar>(a: T, b: T, xs: &[T]) -> Option<T> {
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let nn = T::of_usize(n);
    let sum: T = xs.iter().copied().sum();
    let squares: T = xs.iter().map(|&x| x * x).sum();
    let cross = (sum * sum - squares) / T::lit(2.0);
    Some(a * squares / nn + b * T::lit(2.0) * cross / (nn * (nn - T::one())))
}
