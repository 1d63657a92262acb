//! Fractal (Mandelbrot) percolation sampler.
//!
//! Subdivide the unit cube into M^n subcubes, keep each independently with
//! probability p, and recurse into the survivors. Each cube's coin flip is a
//! pure function of (seed, cube address), so samples are reproducible and
//! independent of traversal order.

use crate::error::{Error, Result};
use crate::point_set::{PointSet, DEFAULT_POINT_CAP};
use serde::{Deserialize, Serialize};

/// Parameters of a percolation sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PercolationSpec {
    pub ambient_dim: usize,
    pub base: u32,
    pub p: f64,
    pub depth: u32,
    pub seed: u64,
}

impl PercolationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.ambient_dim == 0 {
            return Err(Error::parameter("percolation: ambient_dim must be >= 1"));
        }
        if self.base < 2 {
            return Err(Error::parameter("percolation: base M must be >= 2"));
        }
        // p = 1 is accepted as the degenerate boundary (nothing is removed).
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::parameter(format!(
                "percolation: p must lie in (0,1], got {}",
                self.p
            )));
        }
        if self.depth < 1 {
            return Err(Error::parameter("percolation: depth must be >= 1"));
        }
        Ok(())
    }

    /// Deepest level at which neighboring cube centers remain distinct f64s.
    pub fn max_representable_depth(base: u32) -> u32 {
        (49.0 * std::f64::consts::LN_2 / (base as f64).ln()).floor() as u32
    }
}

/// Result of sampling: either the process died out before `depth`, or the
/// centers of the surviving level-`depth` cubes.
#[derive(Debug, Clone)]
pub enum PercolationOutcome {
    Extinct,
    Survived(PointSet),
}

impl PercolationOutcome {
    pub fn point_set(&self) -> Option<&PointSet> {
        match self {
            PercolationOutcome::Survived(ps) => Some(ps),
            PercolationOutcome::Extinct => None,
        }
    }

    pub fn is_extinct(&self) -> bool {
        matches!(self, PercolationOutcome::Extinct)
    }
}

// SplitMix64 finalizer; full-avalanche 64-bit mixing.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[inline]
fn root_state(seed: u64) -> u64 {
    mix(seed ^ 0x6c62272e07bb0142)
}

// Absorb one level's digit vector into the rolling cube address hash. The
// chain of digests is a bijective encoding of (level, index vector), which
// makes the per-cube coin a counter-style function of the cube address.
#[inline]
fn child_state(parent: u64, digits: &[u32]) -> u64 {
    let mut h = parent;
    for (k, &d) in digits.iter().enumerate() {
        h = mix(h ^ (d as u64 + 1).wrapping_add((k as u64).wrapping_mul(0x9e3779b97f4a7c15)));
    }
    h
}

#[inline]
fn keep(state: u64, p: f64) -> bool {
    // 53 high-quality bits -> uniform in [0,1).
    let u = (mix(state) >> 11) as f64 * (1.0 / 9007199254740992.0);
    u < p
}

/// Sample the retention process and return surviving level-`depth` cube
/// centers, or `Extinct`.
pub fn gen_percolation(spec: &PercolationSpec) -> Result<PercolationOutcome> {
    gen_percolation_capped(spec, DEFAULT_POINT_CAP)
}

pub fn gen_percolation_capped(spec: &PercolationSpec, cap: usize) -> Result<PercolationOutcome> {
    spec.validate()?;
    let max_depth = PercolationSpec::max_representable_depth(spec.base);
    if spec.depth > max_depth {
        return Err(Error::capacity(format!(
            "percolation: depth {} exceeds the deepest f64-representable level {} for base {}",
            spec.depth, max_depth, spec.base
        )));
    }
    let n = spec.ambient_dim;
    let cells_per_cube = (spec.base as u64).pow(n as u32);
    // Worst case (p = 1) the sample is the full M^(n*depth) grid.
    let mut worst: u128 = 1;
    for _ in 0..spec.depth {
        worst = worst.saturating_mul(cells_per_cube as u128);
    }
    if spec.p >= 1.0 && worst > cap as u128 {
        return Err(Error::capacity(format!(
            "percolation: full grid would hold {worst} points, above the cap {cap}"
        )));
    }

    let mut survivors: Vec<Vec<u64>> = Vec::new();
    let mut digits = vec![0u32; n];
    let mut index = vec![0u64; n];
    collect(
        spec,
        root_state(spec.seed),
        0,
        &mut digits,
        &mut index,
        &mut survivors,
        cap,
    )?;
    if survivors.is_empty() {
        return Ok(PercolationOutcome::Extinct);
    }
    let scale = (spec.base as f64).powi(-(spec.depth as i32));
    let points: Vec<Vec<f64>> = survivors
        .iter()
        .map(|idx| idx.iter().map(|&i| (i as f64 + 0.5) * scale).collect())
        .collect();
    let ps = PointSet::new(
        n,
        points,
        scale,
        format!(
            "percolation(n={},M={},p={},depth={},seed={})",
            n, spec.base, spec.p, spec.depth, spec.seed
        ),
    )?;
    Ok(PercolationOutcome::Survived(ps))
}

fn collect(
    spec: &PercolationSpec,
    state: u64,
    level: u32,
    digits: &mut Vec<u32>,
    index: &mut Vec<u64>,
    survivors: &mut Vec<Vec<u64>>,
    cap: usize,
) -> Result<()> {
    if level == spec.depth {
        if survivors.len() >= cap {
            return Err(Error::capacity(format!(
                "percolation: surviving cell count exceeds the cap {cap}"
            )));
        }
        survivors.push(index.clone());
        return Ok(());
    }
    let n = spec.ambient_dim;
    let m = spec.base;
    let mut d = vec![0u32; n];
    loop {
        for (k, &dk) in d.iter().enumerate() {
            digits[k] = dk;
        }
        let child = child_state(state, digits);
        if keep(child, spec.p) {
            for k in 0..n {
                index[k] = index[k] * m as u64 + d[k] as u64;
            }
            collect(spec, child, level + 1, digits, index, survivors, cap)?;
            for k in 0..n {
                index[k] = (index[k] - d[k] as u64) / m as u64;
            }
        }
        // odometer over the M^n child digits
        let mut k = 0;
        loop {
            if k == n {
                return Ok(());
            }
            d[k] += 1;
            if d[k] < m {
                break;
            }
            d[k] = 0;
            k += 1;
        }
    }
}

/// Survival indicator for the same retention process, usable at depths far
/// beyond what `gen_percolation` can materialize as f64 points. Shares the
/// per-cube coins with `gen_percolation`, so on representable depths the two
/// agree.
pub fn percolation_survives(spec: &PercolationSpec) -> Result<bool> {
    spec.validate()?;
    Ok(survives(spec, root_state(spec.seed), 0))
}

fn survives(spec: &PercolationSpec, state: u64, level: u32) -> bool {
    if level == spec.depth {
        return true;
    }
    let n = spec.ambient_dim;
    let m = spec.base;
    let mut d = vec![0u32; n];
    let mut digits = vec![0u32; n];
    loop {
        digits.copy_from_slice(&d);
        let child = child_state(state, &digits);
        if keep(child, spec.p) && survives(spec, child, level + 1) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == n {
                return false;
            }
            d[k] += 1;
            if d[k] < m {
                break;
            }
            d[k] = 0;
            k += 1;
        }
    }
}
