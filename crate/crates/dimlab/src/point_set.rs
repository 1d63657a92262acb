//! Finite point-set model for compact sets.
//!
//! A `PointSet` is a δ-resolution approximation of a compact subset of
//! n-space: finitely many distinct points, a declared inner scale below
//! which the approximation carries no information, and provenance recording
//! how the set was generated.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::{Read, Write};

/// Default cap on generated point counts.
pub const DEFAULT_POINT_CAP: usize = 100_000_000;

/// Axis-aligned bounding box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl BoundingBox {
    fn of(points: &[Vec<f64>], dim: usize) -> Self {
        let mut min = vec![f64::INFINITY; dim];
        let mut max = vec![f64::NEG_INFINITY; dim];
        for p in points {
            for (k, &c) in p.iter().enumerate() {
                min[k] = min[k].min(c);
                max[k] = max[k].max(c);
            }
        }
        BoundingBox { min, max }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.min.iter().zip(self.max.iter()))
            .all(|(&c, (&lo, &hi))| c >= lo && c <= hi)
    }

    /// Euclidean diagonal length.
    pub fn diameter(&self) -> f64 {
        self.min
            .iter()
            .zip(&self.max)
            .map(|(lo, hi)| (hi - lo) * (hi - lo))
            .sum::<f64>()
            .sqrt()
    }
}

/// A finite approximation of a compact set in `ambient_dim`-space.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    ambient_dim: usize,
    points: Vec<Vec<f64>>,
    resolution: f64,
    bbox: BoundingBox,
    provenance: String,
}

impl PointSet {
    /// Build a point set, checking the structural invariants: positive
    /// resolution, non-empty and pairwise-distinct points, matching
    /// coordinate arity.
    pub fn new(
        ambient_dim: usize,
        points: Vec<Vec<f64>>,
        resolution: f64,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::parameter("ambient_dim must be >= 1"));
        }
        if points.is_empty() {
            return Err(Error::parameter("point list must be non-empty"));
        }
        if !(resolution > 0.0) || !resolution.is_finite() {
            return Err(Error::parameter(format!(
                "resolution must be a positive finite real, got {resolution}"
            )));
        }
        for p in &points {
            if p.len() != ambient_dim {
                return Err(Error::parameter(format!(
                    "point arity {} does not match ambient_dim {}",
                    p.len(),
                    ambient_dim
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::parameter("points must have finite coordinates"));
            }
        }
        if has_duplicates(&points) {
            return Err(Error::parameter("points must be pairwise distinct"));
        }
        let bbox = BoundingBox::of(&points, ambient_dim);
        Ok(PointSet {
            ambient_dim,
            points,
            resolution,
            bbox,
            provenance: provenance.into(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn bbox(&self) -> &BoundingBox {
        &self.bbox
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn diameter(&self) -> f64 {
        self.bbox.diameter()
    }

    /// Exact minimal pairwise gap, found by bucketing points on a grid and
    /// comparing within 3^n neighborhoods. The grid pitch starts near the
    /// mean spacing and grows until some pair lands in adjacent cells.
    pub fn min_pairwise_gap(&self) -> f64 {
        min_pairwise_gap(&self.points, self.ambient_dim)
    }

    /// Serialize as JSON (`{ambient_dim, resolution, provenance, points}`).
    pub fn to_json(&self) -> PointSetJson {
        PointSetJson {
            ambient_dim: self.ambient_dim,
            resolution: self.resolution,
            provenance: self.provenance.clone(),
            points: self.points.clone(),
        }
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer(w, &self.to_json())?;
        Ok(())
    }

    pub fn read_json<R: Read>(r: R) -> Result<Self> {
        let raw: PointSetJson = serde_json::from_reader(r)?;
        PointSet::new(raw.ambient_dim, raw.points, raw.resolution, raw.provenance)
    }

    /// Packed binary layout: magic `DLPS`, u32 LE dimension, u64 LE count,
    /// f64 LE resolution, then row-major f64 LE coordinates.
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(b"DLPS")?;
        w.write_all(&(self.ambient_dim as u32).to_le_bytes())?;
        w.write_all(&(self.points.len() as u64).to_le_bytes())?;
        w.write_all(&self.resolution.to_le_bytes())?;
        for p in &self.points {
            for &c in p {
                w.write_all(&c.to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// Read the packed binary layout. The format carries no provenance, so
    /// the loaded set is tagged `dlps-import`.
    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != b"DLPS" {
            return Err(Error::Format("bad magic; expected DLPS".into()));
        }
        let mut b4 = [0u8; 4];
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b4)?;
        let dim = u32::from_le_bytes(b4) as usize;
        r.read_exact(&mut b8)?;
        let count = u64::from_le_bytes(b8) as usize;
        r.read_exact(&mut b8)?;
        let resolution = f64::from_le_bytes(b8);
        if dim == 0 || count == 0 {
            return Err(Error::Format("empty point set in DLPS stream".into()));
        }
        if count.saturating_mul(dim) > DEFAULT_POINT_CAP {
            return Err(Error::capacity(format!(
                "DLPS stream declares {count} x {dim} coordinates, above the point cap"
            )));
        }
        let mut points = Vec::with_capacity(count);
        for _ in 0..count {
            let mut p = Vec::with_capacity(dim);
            for _ in 0..dim {
                r.read_exact(&mut b8)?;
                p.push(f64::from_le_bytes(b8));
            }
            points.push(p);
        }
        PointSet::new(dim, points, resolution, "dlps-import")
    }
}

/// JSON shape of a point set.
#[derive(Debug, Serialize, Deserialize)]
pub struct PointSetJson {
    pub ambient_dim: usize,
    pub resolution: f64,
    pub provenance: String,
    pub points: Vec<Vec<f64>>,
}

fn has_duplicates(points: &[Vec<f64>]) -> bool {
    let mut sorted: Vec<&Vec<f64>> = points.iter().collect();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    sorted.windows(2).any(|w| w[0] == w[1])
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn min_pairwise_gap(points: &[Vec<f64>], dim: usize) -> f64 {
    if points.len() < 2 {
        return f64::INFINITY;
    }
    let bbox = BoundingBox::of(points, dim);
    let diag = bbox.diameter().max(f64::MIN_POSITIVE);
    // Initial pitch near the spacing of a uniform cloud of the same count.
    let mut pitch = diag / (points.len() as f64).powf(1.0 / dim as f64).max(2.0);
    for _ in 0..128 {
        let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut overflow = false;
        for (i, p) in points.iter().enumerate() {
            let key: Vec<i64> = p.iter().map(|&c| (c / pitch).floor() as i64).collect();
            let slot = cells.entry(key).or_default();
            slot.push(i);
            if slot.len() > 4096 {
                overflow = true;
                break;
            }
        }
        if overflow {
            pitch /= 4.0;
            continue;
        }
        let mut best = f64::INFINITY;
        let offsets = neighbor_offsets(dim);
        for (key, members) in &cells {
            for off in &offsets {
                let nkey: Vec<i64> = key.iter().zip(off).map(|(k, o)| k + o).collect();
                if nkey < *key {
                    continue; // each unordered cell pair visited once
                }
                if let Some(others) = cells.get(&nkey) {
                    for &i in members {
                        for &j in others {
                            if nkey == *key && j <= i {
                                continue;
                            }
                            best = best.min(dist(&points[i], &points[j]));
                        }
                    }
                }
            }
        }
        // A pair closer than the pitch always shares a neighborhood, so a
        // result at or below the pitch is the exact global minimum.
        if best <= pitch {
            return best;
        }
        if best.is_finite() {
            return best.min(exhaustive_refine(points, best));
        }
        pitch *= 2.0;
    }
    // Degenerate spread; fall back to the quadratic scan.
    exhaustive_refine(points, f64::INFINITY)
}

// When the bucketed pass only saw pairs above its pitch, the candidate may
// still miss a closer pair in non-adjacent cells; one more bucketed pass at
// the candidate pitch settles it. Small inputs just use the direct scan.
fn exhaustive_refine(points: &[Vec<f64>], candidate: f64) -> f64 {
    if points.len() <= 2048 {
        let mut best = candidate;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                best = best.min(dist(&points[i], &points[j]));
            }
        }
        return best;
    }
    let dim = points[0].len();
    let pitch = candidate;
    let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        let key: Vec<i64> = p.iter().map(|&c| (c / pitch).floor() as i64).collect();
        cells.entry(key).or_default().push(i);
    }
    let mut best = candidate;
    let offsets = neighbor_offsets(dim);
    for (key, members) in &cells {
        for off in &offsets {
            let nkey: Vec<i64> = key.iter().zip(off).map(|(k, o)| k + o).collect();
            if nkey < *key {
                continue;
            }
            if let Some(others) = cells.get(&nkey) {
                for &i in members {
                    for &j in others {
                        if nkey == *key && j <= i {
                            continue;
                        }
                        best = best.min(dist(&points[i], &points[j]));
                    }
                }
            }
        }
    }
    best
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
