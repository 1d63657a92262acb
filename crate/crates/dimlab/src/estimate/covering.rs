//! Covering numbers on aligned grids and box-dimension slope fits.
//!
//! N(X,r) is approximated by the number of occupied cells of the axis-aligned
//! grid with mesh r/sqrt(n), so that each cell has diameter r. A single
//! aligned grid (no offset averaging) keeps the count compatible with the
//! dyadic machinery; the constant-factor bias cancels in slope fits.

use crate::error::{Error, Result};
use crate::point_set::PointSet;
use serde::Serialize;
use std::collections::HashSet;

/// Number of occupied diameter-`r` grid cells.
pub fn covering_number(x: &PointSet, r: f64) -> Result<usize> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::parameter(format!("covering: r must be positive, got {r}")));
    }
    let mesh = r / (x.ambient_dim() as f64).sqrt();
    let mut cells: HashSet<Vec<i64>> = HashSet::with_capacity(x.len().min(1 << 20));
    for p in x.points() {
        let key: Vec<i64> = p.iter().map(|&c| (c / mesh).floor() as i64).collect();
        cells.insert(key);
    }
    Ok(cells.len())
}

/// A strictly decreasing list of scales together with the index window used
/// for slope regression.
#[derive(Debug, Clone, Serialize)]
pub struct ScaleGrid {
    scales: Vec<f64>,
    fit_window: (usize, usize),
}

impl ScaleGrid {
    /// Validated scale grid with an explicit window `[lo, hi)`.
    pub fn new(scales: Vec<f64>, fit_window: (usize, usize)) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::parameter("scale grid must be non-empty"));
        }
        for w in scales.windows(2) {
            if !(w[1] < w[0]) {
                return Err(Error::parameter("scales must be strictly decreasing"));
            }
        }
        if scales.iter().any(|&s| !(s > 0.0 && s < 1.0)) {
            return Err(Error::parameter("scales must lie in (0,1)"));
        }
        let (lo, hi) = fit_window;
        if lo >= hi || hi > scales.len() {
            return Err(Error::parameter(format!(
                "fit window {lo}..{hi} invalid for {} scales",
                scales.len()
            )));
        }
        Ok(ScaleGrid {
            scales,
            fit_window: (lo, hi),
        })
    }

    /// Dyadic scales 2^-k for k in `k_coarse..=k_fine`, with the default
    /// window dropping the two coarsest and two finest scales when the grid
    /// is long enough to afford it.
    pub fn dyadic(k_coarse: u32, k_fine: u32) -> Result<Self> {
        if k_coarse < 1 || k_fine < k_coarse {
            return Err(Error::parameter(format!(
                "dyadic grid needs 1 <= k_coarse <= k_fine, got {k_coarse}..{k_fine}"
            )));
        }
        let scales: Vec<f64> = (k_coarse..=k_fine).map(|k| 2f64.powi(-(k as i32))).collect();
        let window = Self::default_window(scales.len());
        ScaleGrid::new(scales, window)
    }

    /// Geometric scales base^-k, k in `k_coarse..=k_fine` (base > 1).
    pub fn geometric(base: f64, k_coarse: u32, k_fine: u32) -> Result<Self> {
        if !(base > 1.0) {
            return Err(Error::parameter("geometric grid needs base > 1"));
        }
        if k_coarse < 1 || k_fine < k_coarse {
            return Err(Error::parameter("geometric grid needs 1 <= k_coarse <= k_fine"));
        }
        let scales: Vec<f64> = (k_coarse..=k_fine).map(|k| base.powi(-(k as i32))).collect();
        let window = Self::default_window(scales.len());
        ScaleGrid::new(scales, window)
    }

    pub fn default_window(len: usize) -> (usize, usize) {
        if len >= 6 {
            (2, len - 2)
        } else {
            (0, len)
        }
    }

    pub fn with_window(mut self, lo: usize, hi: usize) -> Result<Self> {
        if lo >= hi || hi > self.scales.len() {
            return Err(Error::parameter("invalid fit window"));
        }
        self.fit_window = (lo, hi);
        Ok(self)
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn window(&self) -> (usize, usize) {
        self.fit_window
    }

    pub fn windowed(&self) -> &[f64] {
        &self.scales[self.fit_window.0..self.fit_window.1]
    }
}

/// Ordinary least squares fit diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
    pub window: (usize, usize),
}

pub(crate) fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let e = y - (slope * x + intercept);
        ss += e * e;
    }
    (slope, intercept, (ss / n).sqrt())
}

/// Box-dimension estimate: slope of log N(X,r) against log(1/r).
#[derive(Debug, Clone, Serialize)]
pub struct BoxDimReport {
    pub value: f64,
    pub fit: Fit,
    /// (scale, covering number) at every grid scale.
    pub counts: Vec<(f64, usize)>,
    /// Per-scale exponents log N / log(1/r); the maximum over the window is
    /// reported alongside the fit as a limsup proxy.
    pub per_scale_exponents: Vec<f64>,
    pub max_window_exponent: f64,
}

pub fn box_dim_estimate(x: &PointSet, grid: &ScaleGrid) -> Result<BoxDimReport> {
    if grid.windowed().len() < 2 {
        return Err(Error::parameter(
            "box dimension fit needs at least 2 scales in the window",
        ));
    }
    let mut counts = Vec::with_capacity(grid.scales().len());
    for &r in grid.scales() {
        counts.push((r, covering_number(x, r)?));
    }
    let per_scale_exponents: Vec<f64> = counts
        .iter()
        .map(|&(r, n)| (n as f64).ln() / (1.0 / r).ln())
        .collect();
    let (lo, hi) = grid.window();
    let xs: Vec<f64> = counts[lo..hi].iter().map(|&(r, _)| (1.0 / r).ln()).collect();
    let ys: Vec<f64> = counts[lo..hi].iter().map(|&(_, n)| (n as f64).ln()).collect();
    let (slope, intercept, residual) = ols(&xs, &ys);
    let max_window_exponent = per_scale_exponents[lo..hi]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(BoxDimReport {
        value: slope,
        fit: Fit {
            slope,
            intercept,
            residual,
            window: (lo, hi),
        },
        counts,
        per_scale_exponents,
        max_window_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::gen_sequence_set;

    #[test]
    fn singleton_needs_one_cell() {
        let ps = PointSet::new(2, vec![vec![0.3, 0.4]], 0.01, "pt").unwrap();
        assert_eq!(covering_number(&ps, 0.5).unwrap(), 1);
        assert_eq!(covering_number(&ps, 1e-6).unwrap(), 1);
    }

    #[test]
    fn interval_grid_count_matches_direct_oracle() {
        // 2^10 uniformly spaced points on [0,1); mesh 2^-5 covers 32 cells
        let pts: Vec<Vec<f64>> = (0..1024).map(|i| vec![i as f64 / 1024.0]).collect();
        let ps = PointSet::new(1, pts, 1.0 / 1024.0, "grid").unwrap();
        let r = 2f64.powi(-5); // n = 1 so mesh = r
        assert_eq!(covering_number(&ps, r).unwrap(), 32);
    }

    #[test]
    fn filled_square_slope_is_two() {
        let m = 1024;
        let mut pts = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                pts.push(vec![i as f64 / m as f64, j as f64 / m as f64]);
            }
        }
        let ps = PointSet::new(2, pts, 1.0 / m as f64, "square").unwrap();
        let grid = ScaleGrid::dyadic(2, 8).unwrap();
        let rep = box_dim_estimate(&ps, &grid).unwrap();
        assert!((rep.value - 2.0).abs() < 0.05, "slope {}", rep.value);
    }

    #[test]
    fn sequence_set_slope_near_half() {
        let ps = gen_sequence_set(1.0, 1 << 16).unwrap();
        let grid = ScaleGrid::dyadic(3, 24).unwrap();
        let rep = box_dim_estimate(&ps, &grid).unwrap();
        assert!((rep.value - 0.5).abs() < 0.05, "slope {}", rep.value);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(ScaleGrid::new(vec![], (0, 0)).is_err());
        assert!(ScaleGrid::new(vec![0.5, 0.5], (0, 2)).is_err());
        assert!(ScaleGrid::new(vec![0.5, 0.25], (0, 3)).is_err());
        let ps = PointSet::new(1, vec![vec![0.0]], 0.1, "pt").unwrap();
        assert!(covering_number(&ps, 0.0).is_err());
        let one = ScaleGrid::new(vec![0.5], (0, 1)).unwrap();
        assert!(box_dim_estimate(&ps, &one).is_err());
    }
}
