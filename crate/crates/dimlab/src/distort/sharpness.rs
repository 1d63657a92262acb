//! Sharpness checks: the planar radial stretch realizes the quasiconformal
//! distortion bound exactly on inverted power lattices, and box-extremal
//! pairs that saturate the (lower, box, Assouad) lower bound are
//! automatically extremal for every intermediate dimension.

use crate::error::{Error, Result};
use crate::estimate::{intermediate_dim_estimate, ScaleGrid};
use crate::formulas::{banaji_rutar_lower, g_set_profile, DimensionBundle, DimensionKind};
use crate::sets::{apply_power_map, gen_radial_stretch_grid};
use serde::Serialize;

/// Closed-form residuals of the identity
/// `1/dim_theta G^(alpha/K) - 1/2 = (1/K)(1/dim_theta G^alpha - 1/2)`.
#[derive(Debug, Clone, Serialize)]
pub struct SharpnessReport {
    pub s: f64,
    pub alpha: f64,
    pub k: f64,
    pub beta: f64,
    pub max_residual: f64,
    pub rows: Vec<(f64, f64, f64)>,
}

pub fn sharpness_check_radial_stretch(
    s: f64,
    alpha: f64,
    k: f64,
    theta_grid: &[f64],
) -> Result<SharpnessReport> {
    if !(k >= 1.0) {
        return Err(Error::parameter(format!("sharpness: K must be >= 1, got {k}")));
    }
    let beta = alpha / k;
    if !(beta > 0.0 && beta < 1.0) && !(beta == alpha && alpha <= 1.0) {
        return Err(Error::parameter(format!(
            "sharpness: beta = alpha/K = {beta} must lie in (0,1); K too large for alpha = {alpha}"
        )));
    }
    let source = g_set_profile(s, 2, alpha, DimensionKind::Intermediate)?;
    let image = g_set_profile(s, 2, beta, DimensionKind::Intermediate)?;
    let mut rows = Vec::with_capacity(theta_grid.len());
    let mut max_residual = 0.0f64;
    for &theta in theta_grid {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::parameter(format!("sharpness: theta {theta} outside (0,1]")));
        }
        let lhs = 1.0 / image.eval(theta) - 0.5;
        let rhs = (1.0 / source.eval(theta) - 0.5) / k;
        max_residual = max_residual.max((lhs - rhs).abs());
        rows.push((theta, lhs, rhs));
    }
    Ok(SharpnessReport {
        s,
        alpha,
        k,
        beta,
        max_residual,
        rows,
    })
}

/// Empirical companion: generate the inverted lattice, push it through the
/// radial power map with exponent 1/K, estimate both intermediate dimensions,
/// and compare against the closed forms.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalSharpnessReport {
    pub theta: f64,
    pub source_estimate: f64,
    pub source_closed: f64,
    pub image_estimate: f64,
    pub image_closed: f64,
    pub max_deviation: f64,
}

pub fn sharpness_check_radial_stretch_empirical(
    s: f64,
    alpha: f64,
    k: f64,
    theta: f64,
    m_max: u64,
    grid: &ScaleGrid,
) -> Result<EmpiricalSharpnessReport> {
    let beta = alpha / k;
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::parameter(format!(
            "sharpness: beta = alpha/K = {beta} must lie in (0,1)"
        )));
    }
    let source = gen_radial_stretch_grid(s, 2, alpha, m_max)?;
    let image = apply_power_map(&source, 1.0 / k)?;
    let source_est = intermediate_dim_estimate(&source, theta, grid)?;
    let image_est = intermediate_dim_estimate(&image, theta, grid)?;
    let source_closed = g_set_profile(s, 2, alpha, DimensionKind::Intermediate)?.eval(theta);
    let image_closed = g_set_profile(s, 2, beta, DimensionKind::Intermediate)?.eval(theta);
    let max_deviation = (source_est.value - source_closed)
        .abs()
        .max((image_est.value - image_closed).abs());
    Ok(EmpiricalSharpnessReport {
        theta,
        source_estimate: source_est.value,
        source_closed,
        image_estimate: image_est.value,
        image_closed,
        max_deviation,
    })
}

/// Hypotheses and conclusion of the extremality-transfer statement for a
/// planar pair: if (i) the pair is extremal for the box-dimension distortion
/// bound and (ii) the source saturates the (lower, box, Assouad) lower bound
/// at every theta (with lower 0 and Assouad 2), then the pair is extremal for
/// every intermediate dimension.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalityReport {
    pub k: f64,
    pub hypotheses_ok: bool,
    pub failed_hypothesis: Option<String>,
    pub box_residual: f64,
    pub banaji_rutar_residual: f64,
    pub conclusion_residual: f64,
    pub pass: bool,
}

const HYPOTHESIS_TOL: f64 = 1e-9;
const CONCLUSION_TOL: f64 = 1e-12;

pub fn extremality_transfer_check(
    e: &DimensionBundle,
    f: &DimensionBundle,
    k: f64,
    theta_grid: &[f64],
) -> Result<ExtremalityReport> {
    if !(k >= 1.0) {
        return Err(Error::parameter(format!("extremality: K must be >= 1, got {k}")));
    }
    let phi2 = |d: f64| 1.0 / d - 0.5;
    let mut failed: Option<String> = None;
    if e.ambient_dim != 2 || f.ambient_dim != 2 {
        failed = Some("ambient dimension is not 2".to_string());
    } else if e.lower != 0.0 || f.lower != 0.0 {
        failed = Some("lower dimension is not 0 (set is uniformly perfect)".to_string());
    } else if e.assouad != 2.0 || f.assouad != 2.0 {
        failed = Some("Assouad dimension is not 2 (set is porous)".to_string());
    }

    // (i) box extremality
    let box_residual = (phi2(f.box_dim) - phi2(e.box_dim) / k).abs();
    if failed.is_none() && box_residual > HYPOTHESIS_TOL {
        failed = Some(format!(
            "box-dimension extremality fails: residual {box_residual:.3e}"
        ));
    }
    // (ii) saturation of the lower bound at every grid theta
    let mut br_residual = 0.0f64;
    for &theta in theta_grid {
        let bound = banaji_rutar_lower(e.lower.max(0.0), e.box_dim, e.assouad, theta)?;
        br_residual = br_residual.max((e.intermediate.eval(theta) - bound).abs());
    }
    if failed.is_none() && br_residual > HYPOTHESIS_TOL {
        failed = Some(format!(
            "lower-bound extremality fails: residual {br_residual:.3e}"
        ));
    }

    let mut conclusion_residual = 0.0f64;
    for &theta in theta_grid {
        let lhs = phi2(f.intermediate.eval(theta));
        let rhs = phi2(e.intermediate.eval(theta)) / k;
        conclusion_residual = conclusion_residual.max((lhs - rhs).abs());
    }
    let hypotheses_ok = failed.is_none();
    Ok(ExtremalityReport {
        k,
        hypotheses_ok,
        failed_hypothesis: failed,
        box_residual,
        banaji_rutar_residual: br_residual,
        conclusion_residual,
        pass: hypotheses_ok && conclusion_residual <= CONCLUSION_TOL,
    })
}
