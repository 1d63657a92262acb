//! Radial stretch maps and their image grids.
//!
//! The map f_alpha(x) = |x|^{-1-alpha} x inverts the integer-power lattice
//! {1^s,...,m^s}^n into a non-doubling cluster at the origin; the power map
//! g_beta(y) = |y|^{beta-1} y composes with it as g_beta ∘ f_alpha = f_{alpha*beta}.

use crate::error::{Error, Result};
use crate::point_set::{min_pairwise_gap, PointSet, DEFAULT_POINT_CAP};

/// Pointwise radial stretch f_alpha(x) = |x|^{-1-alpha} x (undefined at 0).
pub fn radial_stretch(x: &[f64], alpha: f64) -> Vec<f64> {
    let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let scale = norm.powf(-1.0 - alpha);
    x.iter().map(|&c| c * scale).collect()
}

/// The inverted lattice f_alpha({1^s,...,m_max^s}^n).
///
/// The resolution is the exact minimal pairwise gap of the generated grid;
/// the small-scale geometry near the origin is the object of interest, so it
/// is measured rather than estimated.
pub fn gen_radial_stretch_grid(s: f64, n: usize, alpha: f64, m_max: u64) -> Result<PointSet> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::parameter(format!("gstretch: s must be positive, got {s}")));
    }
    if n == 0 {
        return Err(Error::parameter("gstretch: n must be >= 1"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::parameter(format!(
            "gstretch: alpha must lie in (0,1], got {alpha}"
        )));
    }
    if m_max < 1 {
        return Err(Error::parameter("gstretch: m_max must be >= 1"));
    }
    let count = (m_max as u128).checked_pow(n as u32);
    match count {
        Some(c) if c <= DEFAULT_POINT_CAP as u128 => {}
        _ => {
            return Err(Error::capacity(format!(
                "gstretch: {m_max}^{n} points exceeds the cap {DEFAULT_POINT_CAP}"
            )))
        }
    }
    let powers: Vec<f64> = (1..=m_max).map(|k| (k as f64).powf(s)).collect();
    let mut points = Vec::with_capacity(count.unwrap() as usize);
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<f64> = idx.iter().map(|&i| powers[i]).collect();
        points.push(radial_stretch(&x, alpha));
        let mut k = 0;
        loop {
            if k == n {
                let resolution = min_pairwise_gap(&points, n).min(f64::MAX);
                let resolution = if resolution.is_finite() { resolution } else { 1.0 };
                return PointSet::new(
                    n,
                    points,
                    resolution,
                    format!("gstretch(s={s},n={n},alpha={alpha},m_max={m_max})"),
                );
            }
            idx[k] += 1;
            if idx[k] < m_max as usize {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Pointwise image under the power map g_beta(y) = |y|^{beta-1} y.
///
/// The origin maps to the origin. With beta = 1/K this is the K-quasiconformal
/// radial stretch used to move between the grids above.
pub fn apply_power_map(x: &PointSet, beta: f64) -> Result<PointSet> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::parameter(format!(
            "power map: beta must be positive, got {beta}"
        )));
    }
    let n = x.ambient_dim();
    let points: Vec<Vec<f64>> = x
        .points()
        .iter()
        .map(|p| {
            let norm = p.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm == 0.0 {
                return vec![0.0; n];
            }
            let scale = norm.powf(beta - 1.0);
            p.iter().map(|&c| c * scale).collect()
        })
        .collect();
    let resolution = min_pairwise_gap(&points, n);
    let resolution = if resolution.is_finite() { resolution } else { x.resolution() };
    PointSet::new(
        n,
        points,
        resolution,
        format!("powermap(beta={beta})[{}]", x.provenance()),
    )
}
