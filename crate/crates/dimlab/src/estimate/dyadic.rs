//! Optimal dyadic covering sums via dynamic programming.
//!
//! For a two-scale constraint delta^{1/theta} <= diam Q <= delta, the
//! admissible dyadic levels m satisfy
//! `log2(1/delta) <= m - log2(n)/2 <= (1/theta) log2(1/delta)`,
//! since cubes in level m have diameter sqrt(n) 2^-m. Within that band the
//! minimal cost sum (diam Q_i)^s over covers of a finite set decomposes over
//! the dyadic tree: an occupied cube either pays its own diameter cost or the
//! optimal cost of its occupied children, with the deepest admissible level
//! forced to pay. The optimizer runs on a Morton-ordered point array, so each
//! tree node is a contiguous code range and no explicit node storage is
//! needed.

use crate::error::{Error, Result};
use crate::point_set::PointSet;
use serde::Serialize;

// Coordinates are biased by 2^COORD_BIAS_BITS so grids containing negative
// coordinates still map to nonnegative cell keys.
const COORD_BIAS_BITS: u32 = 13;

/// Admissible dyadic level band for outer scale `delta` and parameter `theta`.
pub fn level_band(delta: f64, theta: f64, dim: usize) -> Result<(u32, u32)> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::parameter(format!(
            "dyadic cover: delta must lie in (0,1), got {delta}"
        )));
    }
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::parameter(format!(
            "dyadic cover: theta must lie in (0,1], got {theta}"
        )));
    }
    let half_log_n = 0.5 * (dim as f64).log2();
    let lo = ((1.0 / delta).log2() + half_log_n - 1e-9).ceil().max(0.0);
    let hi = ((1.0 / delta).log2() / theta + half_log_n + 1e-9).floor();
    if hi < lo {
        return Err(Error::parameter(format!(
            "dyadic cover: no admissible level for theta={theta}, delta={delta}, n={dim}"
        )));
    }
    Ok((lo as u32, hi as u32))
}

/// A witness cover by dyadic cubes, all with levels inside the admissible
/// band, jointly covering the target points.
#[derive(Debug, Clone, Serialize)]
pub struct DyadicCover {
    /// (level m, integer cube index per coordinate); the cube is
    /// prod_k [idx_k 2^-m, (idx_k+1) 2^-m].
    pub cubes: Vec<(u32, Vec<i64>)>,
    pub theta: f64,
    pub delta: f64,
    pub cost_exponent: f64,
    pub cost: f64,
}

impl DyadicCover {
    /// Check band membership, pairwise distinctness, and coverage of `x`.
    pub fn verify(&self, x: &PointSet) -> Result<()> {
        let (lo, hi) = level_band(self.delta, self.theta, x.ambient_dim())?;
        let mut seen = std::collections::HashSet::new();
        for (m, idx) in &self.cubes {
            if *m < lo || *m > hi {
                return Err(Error::internal(format!("cube level {m} outside band {lo}..{hi}")));
            }
            if !seen.insert((*m, idx.clone())) {
                return Err(Error::internal("duplicate cube in cover"));
            }
        }
        'points: for p in x.points() {
            for (m, idx) in &self.cubes {
                let scale = 2f64.powi(*m as i32);
                if p.iter()
                    .zip(idx)
                    .all(|(&c, &i)| c * scale >= i as f64 && c * scale <= (i + 1) as f64)
                {
                    continue 'points;
                }
            }
            return Err(Error::internal(format!("point {p:?} not covered")));
        }
        Ok(())
    }
}

/// Morton-ordered dyadic index of a point set, reusable across many
/// (theta, delta, s) queries.
pub struct CoverSolver {
    dim: usize,
    max_level: u32,
    codes: Vec<u128>,
    /// biased per-coordinate deep keys, in code order (row-major).
    keys: Vec<u64>,
}

impl CoverSolver {
    /// Index `x` down to dyadic level `max_level`. The Morton layout limits
    /// n*(max_level + 14) to 128 bits, plenty for the planar and linear sets
    /// this crate works with.
    pub fn new(x: &PointSet, max_level: u32) -> Result<Self> {
        let dim = x.ambient_dim();
        let bits_per_coord = max_level + COORD_BIAS_BITS + 1;
        if (dim as u32) * bits_per_coord > 128 {
            return Err(Error::parameter(format!(
                "dyadic cover: level {max_level} in dimension {dim} exceeds the 128-bit cell code"
            )));
        }
        let bound = (1u64 << COORD_BIAS_BITS) as f64;
        let scale = 2f64.powi(max_level as i32);
        let bias = 1u64 << (COORD_BIAS_BITS + max_level);
        let mut rows: Vec<(u128, Vec<u64>)> = Vec::with_capacity(x.len());
        for p in x.points() {
            let mut key = Vec::with_capacity(dim);
            for &c in p {
                if !(c > -bound && c < bound) {
                    return Err(Error::parameter(format!(
                        "dyadic cover: coordinate {c} outside the representable range +-{bound}"
                    )));
                }
                let k = (c * scale).floor() as i64 + bias as i64;
                key.push(k as u64);
            }
            rows.push((morton(&key, bits_per_coord), key));
        }
        rows.sort_unstable_by_key(|r| r.0);
        let mut codes = Vec::with_capacity(rows.len());
        let mut keys = Vec::with_capacity(rows.len() * dim);
        for (c, k) in rows {
            codes.push(c);
            keys.extend_from_slice(&k);
        }
        Ok(CoverSolver {
            dim,
            max_level,
            codes,
            keys,
        })
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    /// Exact minimum of sum (diam Q)^s over admissible dyadic covers.
    pub fn cost(&self, theta: f64, delta: f64, s: f64) -> Result<f64> {
        let (lo, hi) = self.band_checked(theta, delta, s)?;
        let diam_pow = self.diam_powers(hi, s);
        Ok(self.dp(0, self.codes.len(), 0, lo, hi, &diam_pow, None))
    }

    /// Optimal cost plus a witness cover realizing it.
    pub fn cover(&self, theta: f64, delta: f64, s: f64) -> Result<(f64, DyadicCover)> {
        let (lo, hi) = self.band_checked(theta, delta, s)?;
        let diam_pow = self.diam_powers(hi, s);
        let mut cubes = Vec::new();
        let cost = self.dp(0, self.codes.len(), 0, lo, hi, &diam_pow, Some(&mut cubes));
        Ok((
            cost,
            DyadicCover {
                cubes,
                theta,
                delta,
                cost_exponent: s,
                cost,
            },
        ))
    }

    fn band_checked(&self, theta: f64, delta: f64, s: f64) -> Result<(u32, u32)> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::parameter(format!(
                "dyadic cover: cost exponent must be finite and >= 0, got {s}"
            )));
        }
        let (lo, hi) = level_band(delta, theta, self.dim)?;
        if hi > self.max_level {
            return Err(Error::parameter(format!(
                "dyadic cover: band reaches level {hi} but the index stops at {}",
                self.max_level
            )));
        }
        Ok((lo, hi))
    }

    fn diam_powers(&self, hi: u32, s: f64) -> Vec<f64> {
        let sqrt_n = (self.dim as f64).sqrt();
        (0..=hi)
            .map(|m| (sqrt_n * 2f64.powi(-(m as i32))).powf(s))
            .collect()
    }

    // Cost of optimally covering the points in codes[from..to], which all
    // share one level-`level` cube. Ties prefer the single coarser cube.
    fn dp(
        &self,
        from: usize,
        to: usize,
        level: u32,
        lo: u32,
        hi: u32,
        diam_pow: &[f64],
        mut witness: Option<&mut Vec<(u32, Vec<i64>)>>,
    ) -> f64 {
        if level == hi {
            if let Some(w) = witness.as_deref_mut() {
                w.push((level, self.cube_index(from, level)));
            }
            return diam_pow[level as usize];
        }
        let shift = (self.max_level - level - 1) * self.dim as u32;
        let mut split = 0.0;
        // child runs: equal values of code >> (shift * dim bits)
        let mut run_starts = Vec::new();
        let mut i = from;
        while i < to {
            run_starts.push(i);
            let digit = self.codes[i] >> shift;
            // first index past this child
            i += self.codes[i..to].partition_point(|&c| (c >> shift) == digit);
        }
        if level >= lo {
            // candidate children costs without witnesses first
            for (k, &start) in run_starts.iter().enumerate() {
                let end = run_starts.get(k + 1).copied().unwrap_or(to);
                split += self.dp(start, end, level + 1, lo, hi, diam_pow, None);
            }
            let take = diam_pow[level as usize];
            if take <= split {
                if let Some(w) = witness.as_deref_mut() {
                    w.push((level, self.cube_index(from, level)));
                }
                return take;
            }
            if let Some(w) = witness.as_deref_mut() {
                for (k, &start) in run_starts.iter().enumerate() {
                    let end = run_starts.get(k + 1).copied().unwrap_or(to);
                    self.dp(start, end, level + 1, lo, hi, diam_pow, Some(w));
                }
            }
            split
        } else {
            for (k, &start) in run_starts.iter().enumerate() {
                let end = run_starts.get(k + 1).copied().unwrap_or(to);
                split += self.dp(
                    start,
                    end,
                    level + 1,
                    lo,
                    hi,
                    diam_pow,
                    witness.as_deref_mut(),
                );
            }
            split
        }
    }

    fn cube_index(&self, row: usize, level: u32) -> Vec<i64> {
        let drop = self.max_level - level;
        (0..self.dim)
            .map(|k| {
                let biased = self.keys[row * self.dim + k] >> drop;
                biased as i64 - (1i64 << (COORD_BIAS_BITS + level))
            })
            .collect()
    }
}

fn morton(key: &[u64], bits_per_coord: u32) -> u128 {
    // bit-interleave, most significant bit first, so lexicographic order on
    // codes equals depth-first order on the dyadic tree
    let n = key.len() as u32;
    let mut code: u128 = 0;
    for b in (0..bits_per_coord).rev() {
        for &k in key {
            code = (code << 1) | (((k >> b) & 1) as u128);
        }
    }
    let _ = n;
    code
}

/// Exact minimum of sum (diam Q_i)^s over covers of `x` by dyadic cubes with
/// diameters in [delta^{1/theta}, delta], with an optimal cover as witness.
pub fn intermediate_cover_cost(
    x: &PointSet,
    theta: f64,
    delta: f64,
    s: f64,
) -> Result<(f64, DyadicCover)> {
    let (_, hi) = level_band(delta, theta, x.ambient_dim())?;
    let solver = CoverSolver::new(x, hi)?;
    solver.cover(theta, delta, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps1(points: &[f64]) -> PointSet {
        PointSet::new(1, points.iter().map(|&x| vec![x]).collect(), 1e-9, "t").unwrap()
    }

    #[test]
    fn band_matches_diameter_constraint() {
        // n=1, delta = 2^-3, theta = 1/2: diam = 2^-m must lie in [2^-6, 2^-3]
        let (lo, hi) = level_band(0.125, 0.5, 1).unwrap();
        assert_eq!((lo, hi), (3, 6));
        // n=2: diam = sqrt(2) 2^-m
        let (lo, hi) = level_band(0.125, 0.5, 2).unwrap();
        assert_eq!((lo, hi), (4, 6));
        assert!(level_band(0.9, 1.0, 2).is_err()); // fractional band is empty
    }

    #[test]
    fn singleton_takes_deepest_cube() {
        let x = ps1(&[0.3]);
        let (cost, cover) = intermediate_cover_cost(&x, 0.5, 0.125, 1.0).unwrap();
        assert!((cost - 2f64.powi(-6)).abs() < 1e-15);
        assert_eq!(cover.cubes.len(), 1);
        assert_eq!(cover.cubes[0].0, 6);
        cover.verify(&x).unwrap();
    }

    #[test]
    fn witness_cost_matches_reported_cost() {
        let xs: Vec<f64> = (0..57).map(|i| (i as f64 * 0.017_3) % 1.0).collect();
        let x = ps1(&xs);
        let (cost, cover) = intermediate_cover_cost(&x, 0.5, 0.25, 0.7).unwrap();
        cover.verify(&x).unwrap();
        let direct: f64 = cover
            .cubes
            .iter()
            .map(|(m, _)| (1.0f64 * 2f64.powi(-(*m as i32))).powf(0.7))
            .sum();
        assert!((cost - direct).abs() < 1e-12, "{cost} vs {direct}");
    }

    #[test]
    fn s_zero_counts_cubes() {
        // at s=0 every cube costs 1, so the optimum is the occupied-cube
        // count at the coarsest admissible level
        let x = ps1(&[0.05, 0.3, 0.62, 0.9]);
        let (cost, cover) = intermediate_cover_cost(&x, 0.5, 0.25, 0.0).unwrap();
        assert_eq!(cost, 4.0);
        assert!(cover.cubes.iter().all(|(m, _)| *m == 2));
    }

    #[test]
    fn negative_coordinates_are_handled() {
        let x = PointSet::new(
            2,
            vec![vec![-0.3, 0.2], vec![0.4, -0.7], vec![-1.5, -2.5]],
            1e-6,
            "neg",
        )
        .unwrap();
        let (cost, cover) = intermediate_cover_cost(&x, 0.5, 0.25, 1.0).unwrap();
        cover.verify(&x).unwrap();
        assert!(cost > 0.0);
    }

    #[test]
    fn sequence_set_cost_transitions_across_the_critical_exponent() {
        // for {m^-1} with theta = 1/2 the critical exponent is 1/3: below it
        // the optimal cost blows up as delta shrinks, above it the cost dies
        let ps = crate::sets::gen_sequence_set(1.0, 1 << 16).unwrap();
        let solver = CoverSolver::new(&ps, 36).unwrap();
        let deltas = [2f64.powi(-6), 2f64.powi(-10), 2f64.powi(-14)];
        let below: Vec<f64> = deltas
            .iter()
            .map(|&d| solver.cost(0.5, d, 0.25).unwrap())
            .collect();
        let above: Vec<f64> = deltas
            .iter()
            .map(|&d| solver.cost(0.5, d, 0.45).unwrap())
            .collect();
        assert!(below.windows(2).all(|w| w[1] > w[0]), "s < 1/3 not growing: {below:?}");
        assert!(above.windows(2).all(|w| w[1] < w[0]), "s > 1/3 not shrinking: {above:?}");
        assert!(below[2] > 1.0 && above[2] < 1.0);
    }

    #[test]
    fn monotone_nonincreasing_in_s_once_diameters_below_one() {
        let xs: Vec<f64> = (0..33).map(|i| (i as f64) / 37.0).collect();
        let x = ps1(&xs);
        let solver = CoverSolver::new(&x, 12).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..=20 {
            let s = k as f64 * 0.1;
            let c = solver.cost(0.5, 2f64.powi(-3), s).unwrap();
            assert!(c <= prev + 1e-12, "cost not nonincreasing at s={s}");
            prev = c;
        }
    }
}
