use crate::error::{Error, Result};
use crate::model::Proportions;
use crate::scalar::Scalar;

use super::components::MomentComponents;

/// Variance of `μ̂_os` from its second-moment components:
///
/// ```text
/// Σ_j od_j²/(n p_j) [ Σ_{l≠j} p_l² (V_{j;l} + (n p_j - 1) C_{j;l})
///                     + ΣΣ_{l≠l'; l,l'≠j} p_l p_l' C_{j;l,l'} ]
/// + ΣΣ_{j≠j'} od_j od_j' [ Σ_{l≠j,j'} p_l (p_l C_{j,j';l} + 2 p_j C_{j,j';l,j})
///                          + p_j p_j' C_{j,j';j',j} ]
/// ```
///
/// The last term couples `Σ_{i∈S_j} ℓ(Z_i, j')` and `Σ_{i∈S_j'} ℓ(Z_i, j)`,
/// which are dependent because each sample both supplies targets and fits
/// the rule for the other.
pub fn theoretical_variance<T: Scalar>(
    components: &MomentComponents<T>,
    proportions: &Proportions<T>,
    n: usize,
) -> Result<T> {
    let k = proportions.k();
    if components.k() != k {
        return Err(Error::InvalidParameters(format!(
            "components for {} sources, proportions for {k}",
            components.k()
        )));
    }
    if let Some(missing) = components.first_missing() {
        return Err(Error::IncompleteComponents(missing));
    }
    let (p, od) = (proportions.p(), proportions.od());
    let size = T::of_usize(n);
    let get = |v: Option<T>| v.expect("completeness checked");

    let mut own = T::zero();
    for j in 0..k {
        let mut inner = T::zero();
        for l in (0..k).filter(|&l| l != j) {
            let v = get(components.loss_var(j, l));
            let c = get(components.same_rule(j, l));
            inner += p[l] * p[l] * (v + (size * p[j] - T::one()) * c);
            for l2 in (0..k).filter(|&l2| l2 != j && l2 != l) {
                inner += p[l] * p[l2] * get(components.same_target(j, l, l2));
            }
        }
        own += od[j] * od[j] / (size * p[j]) * inner;
    }

    let mut cross = T::zero();
    for j in 0..k {
        for j2 in (0..k).filter(|&j2| j2 != j) {
            let mut inner = p[j] * p[j2] * get(components.swapped(j, j2));
            for l in (0..k).filter(|&l| l != j && l != j2) {
                inner += p[l]
                    * (p[l] * get(components.cross_target(j, j2, l))
                        + T::lit(2.0) * p[j] * get(components.entangled(j, j2, l)));
            }
            cross += od[j] * od[j2] * inner;
        }
    }
    Ok(own + cross)
}
