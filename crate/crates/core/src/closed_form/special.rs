use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `E|X|` for `X ~ N(mu, sigma²)`:
/// `mu [1 - 2 Φ(-mu/sigma)] + sigma sqrt(2/π) exp(-mu²/(2 sigma²))`.
///
/// Evaluated on `|mu|`, so the result is exactly even in `mu`.
pub fn folded_normal_mean<T: Scalar>(mu: T, sigma: T) -> T {
    debug_assert!(sigma > T::zero(), "sigma must be positive");
    let m = mu.abs();
    let z = m / (sigma * T::lit(std::f64::consts::SQRT_2));
    // 1 - 2Φ(-m/σ) = erf(z) = 1 - erfc(z)
    let erf = T::one() - z.erfc();
    let density = (-(m * m) / (T::lit(2.0) * sigma * sigma)).exp();
    m * erf + sigma * T::lit((2.0 / std::f64::consts::PI).sqrt()) * density
}

/// `Cov(X1², X2²) = 2 σ12 (σ12 + 2 μ1 μ2)` for a bivariate normal
/// `(X1, X2)` with means `μ1, μ2`, variances `var1, var2` and covariance `cov`.
pub fn bivariate_square_cov<T: Scalar>(mu1: T, mu2: T, var1: T, var2: T, cov: T) -> Result<T> {
    let bad = || Error::InvalidCovariance {
        cov: cov.to_f64().unwrap_or(f64::NAN),
        var1: var1.to_f64().unwrap_or(f64::NAN),
        var2: var2.to_f64().unwrap_or(f64::NAN),
    };
    if !(var1 > T::zero() && var2 > T::zero()) {
        return Err(bad());
    }
    // Allow a few ulps so that cov == var1 == var2 is accepted.
    let bound = var1 * var2 * (T::one() + T::lit(8.0) * T::epsilon());
    if cov * cov > bound || cov.is_nan() {
        return Err(bad());
    }
    Ok(T::lit(2.0) * cov * (cov + T::lit(2.0) * mu1 * mu2))
}
