//! Intermediate dimension estimation from optimal dyadic covering sums.
//!
//! For each outer scale delta the critical exponent s*(delta) is the value
//! where the optimal covering cost crosses 1 (equivalently, where
//! log cost / log(1/delta) crosses 0). The estimate extrapolates s*(delta)
//! linearly in 1/log2(1/delta) to the zero of that variable, which removes
//! the leading constant-factor bias of the per-scale exponents.

use crate::error::{Error, Result};
use crate::estimate::covering::{ols, Fit, ScaleGrid};
use crate::estimate::dyadic::CoverSolver;
use crate::point_set::PointSet;
use serde::Serialize;

/// Tolerance of the bisection on the cost exponent.
pub const CRITICAL_EXPONENT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Serialize)]
pub struct IntermediateDimReport {
    pub theta: f64,
    pub value: f64,
    /// (snapped outer scale, critical exponent) for every grid scale.
    pub per_scale: Vec<(f64, f64)>,
    pub fit: Fit,
}

/// Critical exponent where the optimal covering cost crosses 1, found by
/// bisection on s in [0, n].
pub fn critical_exponent(solver: &CoverSolver, dim: usize, theta: f64, delta: f64) -> Result<f64> {
    let mut lo = 0.0f64;
    let mut hi = dim as f64;
    let cost_lo = solver.cost(theta, delta, lo)?;
    if cost_lo <= 1.0 {
        return Ok(0.0);
    }
    if solver.cost(theta, delta, hi)? > 1.0 {
        return Ok(hi);
    }
    while hi - lo > CRITICAL_EXPONENT_TOL {
        let mid = 0.5 * (lo + hi);
        if solver.cost(theta, delta, mid)? > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Snap a scale to the nearest not-larger dyadic cube diameter sqrt(n) 2^-m,
/// which makes the admissible band non-empty for every theta including 1.
fn snap_scale(delta: f64, dim: usize) -> (u32, f64) {
    let sqrt_n = (dim as f64).sqrt();
    let m = ((sqrt_n / delta).log2() - 1e-9).ceil().max(1.0) as u32;
    let m = m.max((0.5 * (dim as f64).log2()).floor() as u32 + 1);
    (m, sqrt_n * 2f64.powi(-(m as i32)))
}

/// Estimate the theta-intermediate dimension over a scale grid.
///
/// Scales whose inner scale delta^{1/theta} would dip below the set's
/// resolution are dropped: below that scale the covering cost counts points
/// of the finite approximation rather than structure of the set. If the
/// filter removes scales, the fit window is re-derived from the survivors.
pub fn intermediate_dim_estimate(
    x: &PointSet,
    theta: f64,
    grid: &ScaleGrid,
) -> Result<IntermediateDimReport> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::parameter(format!(
            "intermediate estimate: theta must lie in (0,1], got {theta}"
        )));
    }
    let dim = x.ambient_dim();
    let snapped: Vec<(u32, f64)> = grid
        .scales()
        .iter()
        .map(|&d| snap_scale(d, dim))
        .filter(|&(_, d)| d.powf(1.0 / theta) >= x.resolution() * (1.0 - 1e-9))
        .collect();
    if snapped.len() < 2 {
        return Err(Error::parameter(format!(
            "intermediate estimate: fewer than 2 grid scales satisfy delta^(1/theta) >= resolution {} at theta {theta}",
            x.resolution()
        )));
    }
    let (lo, hi) = if snapped.len() == grid.scales().len() {
        grid.window()
    } else {
        ScaleGrid::default_window(snapped.len())
    };
    let deepest = snapped
        .iter()
        .map(|&(m, _)| ((m as f64) / theta).ceil() as u32)
        .max()
        .unwrap();
    let solver = CoverSolver::new(x, deepest)?;
    let mut per_scale = Vec::with_capacity(snapped.len());
    for &(_, delta) in &snapped {
        let s = critical_exponent(&solver, dim, theta, delta)?;
        per_scale.push((delta, s));
    }
    // extrapolate s*(delta) against u = 1/log2(1/delta) to u -> 0
    let us: Vec<f64> = per_scale[lo..hi]
        .iter()
        .map(|&(d, _)| 1.0 / (1.0 / d).log2())
        .collect();
    let ss: Vec<f64> = per_scale[lo..hi].iter().map(|&(_, s)| s).collect();
    let (slope, intercept, residual) = ols(&us, &ss);
    let value = intercept.clamp(0.0, dim as f64);
    Ok(IntermediateDimReport {
        theta,
        value,
        per_scale,
        fit: Fit {
            slope,
            intercept,
            residual,
            window: (lo, hi),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimate::covering::box_dim_estimate;
    use crate::sets::gen_sequence_set;

    #[test]
    fn theta_one_tracks_box_estimate() {
        let ps = gen_sequence_set(1.0, 1 << 14).unwrap();
        let grid = ScaleGrid::dyadic(3, 20).unwrap();
        let b = box_dim_estimate(&ps, &grid).unwrap();
        let i = intermediate_dim_estimate(&ps, 1.0, &grid).unwrap();
        assert!(
            (b.value - i.value).abs() < 0.02,
            "box {} vs theta=1 {}",
            b.value,
            i.value
        );
    }

    #[test]
    fn sequence_set_theta_half_near_one_third() {
        let ps = gen_sequence_set(1.0, 1 << 16).unwrap();
        let grid = ScaleGrid::dyadic(4, 14).unwrap();
        let rep = intermediate_dim_estimate(&ps, 0.5, &grid).unwrap();
        assert!(
            (rep.value - 1.0 / 3.0).abs() < 0.05,
            "theta=1/2 estimate {}",
            rep.value
        );
    }

    #[test]
    fn full_interval_every_theta_gives_one() {
        let pts: Vec<Vec<f64>> = (0..4096).map(|i| vec![i as f64 / 4096.0]).collect();
        let ps = PointSet::new(1, pts, 1.0 / 4096.0, "interval").unwrap();
        let grid = ScaleGrid::dyadic(2, 8).unwrap();
        for theta in [0.3, 0.6, 1.0] {
            let rep = intermediate_dim_estimate(&ps, theta, &grid).unwrap();
            assert!((rep.value - 1.0).abs() < 0.05, "theta {theta}: {}", rep.value);
        }
    }

    #[test]
    fn rejects_bad_theta() {
        let ps = gen_sequence_set(1.0, 16).unwrap();
        let grid = ScaleGrid::dyadic(2, 6).unwrap();
        assert!(intermediate_dim_estimate(&ps, 0.0, &grid).is_err());
        assert!(intermediate_dim_estimate(&ps, 1.5, &grid).is_err());
    }
}
