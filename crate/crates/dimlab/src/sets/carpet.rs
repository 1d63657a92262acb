//! Self-affine carpets on an m x n grid (n > m >= 2).
//!
//! The defining maps are f_{(i,j)}(x,y) = ((x+i-1)/m, (y+j-1)/n) for digits
//! (i,j) drawn from a chosen subset of {1..m} x {1..n}. Level-L approximation
//! keeps the lower-left corners of the N^L level-L rectangles.

use crate::error::{Error, Result};
use crate::point_set::{PointSet, DEFAULT_POINT_CAP};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Digit data for a carpet: horizontal base `m`, vertical base `n > m`, and
/// the retained digits (1-based column/row pairs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarpetSpec {
    pub base_x: u32,
    pub base_y: u32,
    pub digits: BTreeSet<(u32, u32)>,
}

impl CarpetSpec {
    pub fn new(base_x: u32, base_y: u32, digits: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let spec = CarpetSpec {
            base_x,
            base_y,
            digits: digits.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.base_x < 2 || self.base_y <= self.base_x {
            return Err(Error::parameter(format!(
                "carpet: requires base_y > base_x >= 2, got {} x {}",
                self.base_x, self.base_y
            )));
        }
        if self.digits.is_empty() {
            return Err(Error::parameter("carpet: digit set must be non-empty"));
        }
        for &(i, j) in &self.digits {
            if i < 1 || i > self.base_x || j < 1 || j > self.base_y {
                return Err(Error::parameter(format!(
                    "carpet: digit ({i},{j}) outside 1..={} x 1..={}",
                    self.base_x, self.base_y
                )));
            }
        }
        Ok(())
    }

    /// Total digit count N.
    pub fn digit_count(&self) -> usize {
        self.digits.len()
    }

    /// Number of occupied columns M.
    pub fn occupied_columns(&self) -> usize {
        self.digits.iter().map(|&(i, _)| i).collect::<BTreeSet<_>>().len()
    }

    /// Per-column digit counts N_i, one entry per occupied column, in column order.
    pub fn column_counts(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = Vec::new();
        let mut current_col = 0u32;
        for &(i, _) in &self.digits {
            if i != current_col {
                counts.push(0);
                current_col = i;
            }
            *counts.last_mut().unwrap() += 1;
        }
        counts
    }

    /// Logarithmic eccentricity gamma = log_m(n) > 1.
    pub fn gamma(&self) -> f64 {
        (self.base_y as f64).ln() / (self.base_x as f64).ln()
    }

    /// True when every occupied column holds the same number of digits; all
    /// the dimensions of such carpets coincide.
    pub fn uniform_fibres(&self) -> bool {
        let counts = self.column_counts();
        counts.iter().all(|&c| c == counts[0])
    }

    pub fn read_json<R: std::io::Read>(r: R) -> Result<Self> {
        let spec: CarpetSpec = serde_json::from_reader(r)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn write_json<W: std::io::Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }
}

/// Lower-left corners of the level-`level` rectangles of the carpet IFS.
///
/// The point count is exactly N^level and the resolution is the smaller
/// rectangle side base_y^{-level}. Corners rather than centers keep the
/// coordinates exact rationals with power denominators.
pub fn gen_bm_carpet(spec: &CarpetSpec, level: u32) -> Result<PointSet> {
    gen_bm_carpet_capped(spec, level, DEFAULT_POINT_CAP)
}

pub fn gen_bm_carpet_capped(spec: &CarpetSpec, level: u32, cap: usize) -> Result<PointSet> {
    spec.validate()?;
    if level < 1 {
        return Err(Error::parameter("carpet: level must be >= 1"));
    }
    let n_digits = spec.digit_count() as u128;
    let mut count: u128 = 1;
    for _ in 0..level {
        count = count.saturating_mul(n_digits);
        if count > cap as u128 {
            return Err(Error::capacity(format!(
                "carpet: {}^{} points exceeds the cap {}",
                n_digits, level, cap
            )));
        }
    }
    let digits: Vec<(u32, u32)> = spec.digits.iter().copied().collect();
    let m = spec.base_x as f64;
    let n = spec.base_y as f64;
    // Corner of the word (d_1..d_L) is sum_k ((i_k - 1) m^{-k}, (j_k - 1) n^{-k}).
    let mut points: Vec<Vec<f64>> = vec![vec![0.0, 0.0]];
    for k in 1..=level {
        let mx = m.powi(-(k as i32));
        let ny = n.powi(-(k as i32));
        let mut next = Vec::with_capacity(points.len() * digits.len());
        for p in &points {
            for &(i, j) in &digits {
                next.push(vec![
                    p[0] + (i - 1) as f64 * mx,
                    p[1] + (j - 1) as f64 * ny,
                ]);
            }
        }
        points = next;
    }
    let resolution = n.powi(-(level as i32));
    PointSet::new(
        2,
        points,
        resolution,
        format!(
            "bm(m={},n={},digits={},level={level})",
            spec.base_x,
            spec.base_y,
            spec.digit_count()
        ),
    )
}
