//! Assouad spectrum scan.
//!
//! For theta in (0,1) the spectrum bounds N(B(x0,R), r) <= C (R/r)^s under
//! the coupling r = R^{1/theta}. The scan samples centers (stratified by
//! dyadic cell), counts occupied r-cells inside each R-ball across the
//! admissible scales, and estimates the exponent per center as the slope of
//! log N against log(R/r); the constant C drops out of the slope. The value
//! reported is the supremum of per-center exponents, with the maximizing
//! (center, R, r) triple as witness.

use crate::error::{Error, Result};
use crate::estimate::covering::{ols, ScaleGrid};
use crate::point_set::PointSet;
use serde::Serialize;
use std::collections::HashMap;

/// Cap on scanned centers; centers are stratified by dyadic cell so every
/// region of the set stays represented.
pub const MAX_CENTERS: usize = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct AssouadWitness {
    pub center: Vec<f64>,
    pub big_r: f64,
    pub small_r: f64,
    pub count: usize,
    pub exponent: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssouadSpectrumReport {
    pub theta: f64,
    pub value: f64,
    pub witness: AssouadWitness,
    /// per admissible R: the largest single-scale exponent over centers
    pub per_scale: Vec<(f64, f64)>,
}

fn cell_key(p: &[f64], mesh: f64) -> Vec<i64> {
    p.iter().map(|&c| (c / mesh).floor() as i64).collect()
}

/// Pick at most `cap` centers, one representative per occupied dyadic cell at
/// the coarsest level that splits the set into at least `cap/2` cells.
fn stratified_centers(x: &PointSet, cap: usize) -> Vec<Vec<f64>> {
    if x.len() <= cap {
        return x.points().to_vec();
    }
    let mut mesh = x.diameter().max(1e-300);
    for _ in 0..120 {
        let mut reps: HashMap<Vec<i64>, Vec<f64>> = HashMap::new();
        for p in x.points() {
            reps.entry(cell_key(p, mesh)).or_insert_with(|| p.clone());
            if reps.len() > cap {
                break;
            }
        }
        if reps.len() >= cap / 2 || reps.len() >= x.len() {
            let mut out: Vec<Vec<f64>> = reps.into_values().collect();
            out.sort_by(|a, b| a.partial_cmp(b).unwrap());
            out.truncate(cap);
            return out;
        }
        mesh /= 2.0;
    }
    x.points().iter().take(cap).cloned().collect()
}

pub fn assouad_spectrum_estimate(
    x: &PointSet,
    theta: f64,
    grid: &ScaleGrid,
) -> Result<AssouadSpectrumReport> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::parameter(format!(
            "assouad spectrum: theta must lie in (0,1), got {theta}"
        )));
    }
    let dim = x.ambient_dim();
    // the scan regresses per center and takes a supremum, so it wants the
    // longest usable baseline: every admissible grid scale participates and
    // the fit window is not applied here
    let admissible: Vec<(f64, f64)> = grid
        .scales()
        .iter()
        .map(|&big_r| (big_r, big_r.powf(1.0 / theta)))
        .filter(|&(_, r)| r >= x.resolution() * (1.0 - 1e-12))
        .collect();
    if admissible.is_empty() {
        return Err(Error::parameter(format!(
            "assouad spectrum: no admissible R in the grid has R^(1/theta) above the resolution {}",
            x.resolution()
        )));
    }
    let centers = stratified_centers(x, MAX_CENTERS);
    // counts[k][c]: occupied r_k-cells meeting B(center_c, R_k)
    let mut counts = vec![vec![0usize; centers.len()]; admissible.len()];
    let mut per_scale = Vec::with_capacity(admissible.len());
    let offsets = neighbor_offsets(dim);
    for (k, &(big_r, small_r)) in admissible.iter().enumerate() {
        let fine_mesh = small_r / (dim as f64).sqrt();
        // occupied fine cells, one representative each, bucketed by R-cells
        let mut fine: HashMap<Vec<i64>, Vec<f64>> = HashMap::new();
        for p in x.points() {
            fine.entry(cell_key(p, fine_mesh)).or_insert_with(|| p.clone());
        }
        let mut coarse: HashMap<Vec<i64>, Vec<Vec<f64>>> = HashMap::new();
        for rep in fine.into_values() {
            coarse.entry(cell_key(&rep, big_r)).or_default().push(rep);
        }
        let denom = (big_r / small_r).ln();
        let mut scale_best = f64::NEG_INFINITY;
        for (c, center) in centers.iter().enumerate() {
            let ckey = cell_key(center, big_r);
            let mut count = 0usize;
            for off in &offsets {
                let nkey: Vec<i64> = ckey.iter().zip(off).map(|(k, o)| k + o).collect();
                if let Some(reps) = coarse.get(&nkey) {
                    for rep in reps {
                        let d2: f64 = rep
                            .iter()
                            .zip(center)
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum();
                        if d2 <= big_r * big_r {
                            count += 1;
                        }
                    }
                }
            }
            counts[k][c] = count;
            if count > 0 {
                scale_best = scale_best.max((count as f64).ln() / denom);
            }
        }
        per_scale.push((big_r, scale_best));
    }

    let mut best_value = f64::NEG_INFINITY;
    let mut best_center = 0usize;
    if admissible.len() >= 2 {
        // slope of ln N against ln(R/r) per center
        let xs: Vec<f64> = admissible
            .iter()
            .map(|&(big_r, small_r)| (big_r / small_r).ln())
            .collect();
        for c in 0..centers.len() {
            let pairs: Vec<(f64, f64)> = (0..admissible.len())
                .filter(|&k| counts[k][c] > 0)
                .map(|k| (xs[k], (counts[k][c] as f64).ln()))
                .collect();
            if pairs.len() < 2 {
                continue;
            }
            let px: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let py: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let (slope, _, _) = ols(&px, &py);
            if slope > best_value {
                best_value = slope;
                best_center = c;
            }
        }
    }
    if !best_value.is_finite() {
        // single admissible scale: fall back to the raw sup exponent
        for (k, &(big_r, small_r)) in admissible.iter().enumerate() {
            let denom = (big_r / small_r).ln();
            for (c, &n) in counts[k].iter().enumerate() {
                if n > 0 {
                    let e = (n as f64).ln() / denom;
                    if e > best_value {
                        best_value = e;
                        best_center = c;
                    }
                }
            }
        }
    }
    if !best_value.is_finite() {
        return Err(Error::internal("assouad scan found no nonempty ball"));
    }
    let (big_r, small_r) = *admissible.last().unwrap();
    let witness = AssouadWitness {
        center: centers[best_center].clone(),
        big_r,
        small_r,
        count: counts[admissible.len() - 1][best_center],
        exponent: best_value,
    };
    Ok(AssouadSpectrumReport {
        theta,
        value: best_value,
        witness,
        per_scale,
    })
}

fn neighbor_offsets(dim: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(out.len() * 3);
        for base in &out {
            for d in [-1i64, 0, 1] {
                let mut v = base.clone();
                v.push(d);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::gen_sequence_set;

    #[test]
    fn sequence_set_spectrum_saturates_at_one() {
        // theta = 1/2: expected min{1, 1/((1+1)(1-1/2))} = 1, witness near 0
        let ps = gen_sequence_set(1.0, 1 << 16).unwrap();
        let grid = ScaleGrid::dyadic(4, 12).unwrap();
        let rep = assouad_spectrum_estimate(&ps, 0.5, &grid).unwrap();
        assert!((rep.value - 1.0).abs() < 0.1, "estimate {}", rep.value);
        assert!(
            rep.witness.center[0] < 0.1,
            "witness should sit near the origin, got {:?}",
            rep.witness.center
        );
    }

    #[test]
    fn full_square_spectrum_is_two() {
        let m = 256;
        let mut pts = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                pts.push(vec![i as f64 / m as f64, j as f64 / m as f64]);
            }
        }
        let ps = PointSet::new(2, pts, 1.0 / m as f64, "square").unwrap();
        let grid = ScaleGrid::dyadic(2, 4).unwrap();
        let rep = assouad_spectrum_estimate(&ps, 0.5, &grid).unwrap();
        assert!((rep.value - 2.0).abs() < 0.1, "estimate {}", rep.value);
    }

    #[test]
    fn empty_admissible_grid_is_an_error() {
        let ps = gen_sequence_set(1.0, 8).unwrap(); // coarse resolution
        let grid = ScaleGrid::dyadic(8, 12).unwrap(); // R^2 far below it
        assert!(assouad_spectrum_estimate(&ps, 0.5, &grid).is_err());
    }
}
