//! General-purpose dimension inequalities: the lower bound on intermediate
//! dimension from (lower, box, Assouad) data, product rules, and the coarse
//! spectrum bound.

use crate::error::{Error, Result};
use crate::formulas::families::DimensionBundle;
use crate::formulas::profile::{DimensionKind, DimensionProfile, ValueTag};
use serde::Serialize;

/// Lower bound for the theta-intermediate dimension of a space with lower
/// dimension `lambda`, box dimension `beta`, and Assouad dimension `alpha`:
///
/// `(alpha (beta-lambda) theta + (alpha-beta) lambda) / ((beta-lambda) theta + (alpha-beta))`.
///
/// Degenerate denominators (alpha = beta = lambda at theta > 0) return beta,
/// matching the limit. At theta = 1 the value simplifies to beta.
pub fn banaji_rutar_lower(lambda: f64, beta: f64, alpha: f64, theta: f64) -> Result<f64> {
    if !(0.0 <= lambda && lambda <= beta && beta <= alpha) || !alpha.is_finite() {
        return Err(Error::parameter(format!(
            "banaji_rutar_lower: need 0 <= lambda <= beta <= alpha finite, got ({lambda}, {beta}, {alpha})"
        )));
    }
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::parameter(format!(
            "banaji_rutar_lower: theta must lie in (0,1], got {theta}"
        )));
    }
    let den = (beta - lambda) * theta + (alpha - beta);
    if den <= 0.0 {
        return Ok(beta);
    }
    Ok((alpha * (beta - lambda) * theta + (alpha - beta) * lambda) / den)
}

/// The doubling corollary of the same estimate (lambda -> 0, alpha -> inf):
/// dim_theta >= theta * box.
pub fn doubling_lower(beta: f64, theta: f64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::parameter("doubling bound: box dimension must be >= 0"));
    }
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::parameter(format!(
            "doubling bound: theta must lie in (0,1], got {theta}"
        )));
    }
    Ok(theta * beta)
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    Upper,
}

/// Product dimension report: the box dimension adds exactly; intermediate
/// and quasi-Hausdorff dimensions of a product are bounded by the sums.
#[derive(Debug, Clone)]
pub struct ProductBounds {
    pub ambient_dim: u32,
    pub box_dim: (f64, BoundKind),
    pub intermediate: DimensionProfile,
    pub quasi_hausdorff: (f64, BoundKind),
}

pub fn product_bounds(a: &DimensionBundle, b: &DimensionBundle) -> Result<ProductBounds> {
    let n = a.ambient_dim + b.ambient_dim;
    let (pa, pb) = (a.intermediate.clone(), b.intermediate.clone());
    let mut breakpoints = pa.breakpoints.clone();
    breakpoints.extend_from_slice(&pb.breakpoints);
    breakpoints.sort_by(|x, y| x.partial_cmp(y).unwrap());
    breakpoints.dedup();
    let sum_profile = DimensionProfile::closed(DimensionKind::Intermediate, n, move |t| {
        pa.eval(t) + pb.eval(t)
    })
    .with_tag(ValueTag::Upper)
    .with_breakpoints(breakpoints)
    .with_family(format!("product[{} x {}]", a.family, b.family));
    Ok(ProductBounds {
        ambient_dim: n,
        box_dim: (a.box_dim + b.box_dim, BoundKind::Exact),
        intermediate: sum_profile,
        quasi_hausdorff: (a.quasi_hausdorff + b.quasi_hausdorff, BoundKind::Upper),
    })
}

/// Coarse bound for the Assouad spectrum from the box and quasi-Assouad
/// dimensions: min{box/(1-theta), qa}.
pub fn spectrum_general_bound(box_dim: f64, quasi_assouad: f64, theta: f64) -> Result<f64> {
    if !(box_dim >= 0.0 && quasi_assouad >= 0.0) {
        return Err(Error::parameter("spectrum bound: dimensions must be nonnegative"));
    }
    if !(theta >= 0.0 && theta < 1.0) {
        return Err(Error::parameter(format!(
            "spectrum bound: theta must lie in [0,1), got {theta}"
        )));
    }
    Ok((box_dim / (1.0 - theta)).min(quasi_assouad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn br_theta_one_is_box() {
        for (l, b, a) in [(0.0, 0.5, 1.0), (0.2, 0.7, 1.4), (0.0, 2.0, 2.0)] {
            assert!((banaji_rutar_lower(l, b, a, 1.0).unwrap() - b).abs() < 1e-14);
        }
    }

    #[test]
    fn br_hand_value() {
        // (lambda=0, alpha=n=2, beta=2/3, theta=1/2) -> 2/5
        let v = banaji_rutar_lower(0.0, 2.0 / 3.0, 2.0, 0.5).unwrap();
        assert!((v - 0.4).abs() < 1e-15, "{v}");
    }

    #[test]
    fn br_equals_g_set_formula() {
        // with lambda=0, alpha=n, beta=n/(1+s a) the bound is exactly
        // n theta/(theta + s a)
        let mut rng = SplitMix64::new(3);
        for _ in 0..50 {
            let s = rng.range(0.2, 4.0);
            let n = 1 + (rng.next_u64() % 3) as u32;
            let a = rng.range(0.05, 1.0);
            let beta = n as f64 / (1.0 + s * a);
            for i in 1..=20 {
                let theta = i as f64 / 20.0;
                let lhs = banaji_rutar_lower(0.0, beta, n as f64, theta).unwrap();
                let rhs = n as f64 * theta / (theta + s * a);
                assert!((lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn br_degenerate_cases() {
        assert_eq!(banaji_rutar_lower(0.5, 0.5, 0.5, 0.3).unwrap(), 0.5);
        assert!((banaji_rutar_lower(0.5, 0.5, 1.0, 0.3).unwrap() - 0.5).abs() < 1e-15);
        assert!(banaji_rutar_lower(0.5, 0.4, 1.0, 0.3).is_err());
        assert!(banaji_rutar_lower(0.0, 0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn product_rules() {
        let e1 = DimensionBundle::sequence(1.0, 1).unwrap();
        let p = product_bounds(&e1, &e1).unwrap();
        assert_eq!(p.ambient_dim, 2);
        assert!((p.box_dim.0 - 1.0).abs() < 1e-15);
        // intermediate upper bound: 2 theta/(theta+1)
        assert!((p.intermediate.eval(0.5) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(p.quasi_hausdorff.0, 0.0);
    }

    #[test]
    fn spectrum_bound_values() {
        assert!((spectrum_general_bound(0.5, 1.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((spectrum_general_bound(0.5, 1.0, 1e-12).unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(spectrum_general_bound(0.0, 3.0, 0.7).unwrap(), 0.0);
        assert!(spectrum_general_bound(0.5, 1.0, 1.0).is_err());
    }
}
