//! Image-dimension bounds under Hoelder, Sobolev, and quasiconformal maps.
//!
//! On the Phi scale (Phi(s) = 1/s - 1/n) a K-quasiconformal image dimension
//! d' of a set of dimension d obeys
//! `alpha(p(K)) Phi(d) <= Phi(d') <= alpha(p(K^(n-1)))^(-1) Phi(d)`,
//! where p is the Sobolev higher-integrability exponent for box, Hausdorff,
//! and intermediate dimensions, and the reverse-Hoelder exponent for
//! Assouad-type dimensions. Inversion back to dimension space is the exact
//! algebraic inverse of Phi, so no root finding is involved.

use crate::error::{Error, Result};
use crate::formulas::{
    holder_alpha, p_sob, phi, phi_inv, tau, DimensionKind, DimensionProfile, ExponentTag,
    SobolevExponentModel,
};
use serde::Serialize;

/// Ambient dimension, dilatation, and exponent-model choices for one
/// distortion computation.
#[derive(Debug, Clone)]
pub struct DistortionContext {
    pub n: u32,
    pub k: f64,
    pub p_model: SobolevExponentModel,
    /// Fixed user value for the reverse-Hoelder exponent; when absent the
    /// Sobolev model value is used and flagged as an assumption (the two are
    /// known to agree only for n = 2).
    pub p_rh: Option<f64>,
}

impl DistortionContext {
    pub fn new(n: u32, k: f64, p_model: SobolevExponentModel) -> Result<Self> {
        p_model.validate(n)?;
        if !(k >= 1.0) {
            return Err(Error::parameter(format!("distortion: K must be >= 1, got {k}")));
        }
        Ok(DistortionContext {
            n,
            k,
            p_model,
            p_rh: None,
        })
    }

    pub fn with_p_rh(mut self, p: f64) -> Result<Self> {
        if !(p > self.n as f64) {
            return Err(Error::parameter(format!(
                "distortion: p_rh must exceed n = {}, got {p}",
                self.n
            )));
        }
        self.p_rh = Some(p);
        Ok(self)
    }

    /// Dilatation of the inverse map.
    pub fn inverse_k(&self) -> f64 {
        self.k.powi(self.n as i32 - 1)
    }

    fn p_sob_at(&self, k: f64) -> Result<(f64, ExponentTag)> {
        p_sob(self.n, k, self.p_model)
    }

    /// Reverse-Hoelder exponent at dilatation `k`, plus whether its value is
    /// an assumption rather than a theorem.
    fn p_rh_at(&self, k: f64) -> Result<(f64, bool)> {
        if let Some(p) = self.p_rh {
            return Ok((p, true));
        }
        let (p, _) = self.p_sob_at(k)?;
        // Astala's planar proof gives the reverse-Hoelder exponent too
        let assumed = !(self.n == 2 && self.p_model == SobolevExponentModel::Exact2D);
        Ok((p, assumed))
    }
}

/// Hoelder image bound dim/alpha, clamped into [0, n] when a context is
/// supplied.
pub fn holder_upper(dim_theta: f64, alpha: f64, ctx: Option<&DistortionContext>) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::parameter(format!(
            "holder_upper: alpha must lie in (0,1], got {alpha}"
        )));
    }
    if !(dim_theta >= 0.0) {
        return Err(Error::parameter("holder_upper: dimension must be >= 0"));
    }
    let raw = dim_theta / alpha;
    Ok(match ctx {
        Some(c) => raw.min(c.n as f64),
        None => raw,
    })
}

/// Sobolev image bound tau_p(dim); the endpoints 0 and n are fixed points.
pub fn sobolev_upper(dim_theta: f64, n: u32, p: f64) -> Result<f64> {
    if dim_theta == 0.0 || dim_theta == n as f64 {
        if !(p > n as f64) {
            return Err(Error::parameter(format!("sobolev_upper: p must exceed n = {n}")));
        }
        return Ok(dim_theta);
    }
    tau(dim_theta, n, p)
}

/// Two-sided interval of possible image dimensions under a K-quasiconformal
/// map.
#[derive(Debug, Clone, Serialize)]
pub struct QcInterval {
    pub lo: f64,
    pub hi: f64,
    pub tag: ExponentTag,
    /// true when the Hoelder bound K*d tightened the upper endpoint
    pub holder_clamped: bool,
    /// the dimension notion the interval speaks about
    pub kind: DimensionKind,
}

/// Interval of possible values of the intermediate dimension of f(E), for f
/// K-quasiconformal, given dim_theta E = d. At K = 1 or d in {0, n} the
/// interval collapses to the input.
pub fn qc_interval(d: f64, ctx: &DistortionContext) -> Result<QcInterval> {
    qc_interval_kind(d, ctx, DimensionKind::Intermediate)
}

fn qc_interval_kind(d: f64, ctx: &DistortionContext, kind: DimensionKind) -> Result<QcInterval> {
    let n = ctx.n;
    if !(d >= 0.0 && d <= n as f64) {
        return Err(Error::parameter(format!(
            "qc_interval: dimension must lie in [0,{n}], got {d}"
        )));
    }
    let (p_fwd, tag) = ctx.p_sob_at(ctx.k)?;
    // endpoints are fixed points, and conformal maps leave the interval
    // degenerate; both exactly, not up to Phi round-trip rounding
    if d == 0.0 || d == n as f64 || ctx.k == 1.0 {
        return Ok(QcInterval {
            lo: d,
            hi: d,
            tag,
            holder_clamped: false,
            kind,
        });
    }
    let (p_inv, _) = ctx.p_sob_at(ctx.inverse_k())?;
    let phi_d = phi(d, n)?;
    // upper endpoint: Phi(d') >= alpha(p(K)) Phi(d), i.e. d' <= tau_{p(K)}(d)
    let mut hi = phi_inv(holder_alpha(p_fwd, n)? * phi_d, n);
    // lower endpoint: Phi(d') <= alpha(p(K^(n-1)))^(-1) Phi(d)
    let lo = phi_inv(phi_d / holder_alpha(p_inv, n)?, n);
    let holder_cap = (ctx.k * d).min(n as f64);
    let holder_clamped = holder_cap < hi;
    if holder_clamped {
        hi = holder_cap;
    }
    Ok(QcInterval {
        lo,
        hi,
        tag,
        holder_clamped,
        kind,
    })
}

/// The Hausdorff-dimension statement of the same bounds (identical exponent
/// machinery, reported under its own label).
pub fn gv_hausdorff_bounds(s: f64, ctx: &DistortionContext) -> Result<QcInterval> {
    qc_interval_kind(s, ctx, DimensionKind::Hausdorff)
}

/// Bounds on the image Assouad spectrum at theta' = 1/(1+t), computed from
/// the source spectrum at the K-shifted parameters K/(K+t) and 1/(1+Kt).
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumQcBounds {
    pub t: f64,
    pub theta_image: f64,
    pub lower_phi: f64,
    pub upper_phi: f64,
    /// dimension-space interval [phi_inv(upper), phi_inv(lower)]
    pub lo: f64,
    pub hi: f64,
    pub assumptions: Vec<String>,
}

pub fn assouad_spectrum_qc_bounds(
    profile: &DimensionProfile,
    ctx: &DistortionContext,
    t: f64,
) -> Result<SpectrumQcBounds> {
    if profile.kind != DimensionKind::AssouadSpectrum {
        return Err(Error::parameter(format!(
            "spectrum bounds need an assouad_spectrum profile, got {}",
            profile.kind.as_str()
        )));
    }
    if !(t > 0.0) {
        return Err(Error::parameter(format!("spectrum bounds: t must be positive, got {t}")));
    }
    let n = ctx.n;
    let k = ctx.k;
    let d_lower_src = profile.eval(k / (k + t));
    let d_upper_src = profile.eval(1.0 / (1.0 + k * t));
    if !(d_lower_src > 0.0 && d_upper_src > 0.0) {
        return Err(Error::parameter(
            "spectrum bounds: source spectrum must be positive at the shifted parameters",
        ));
    }
    let (p_fwd, fwd_assumed) = ctx.p_rh_at(k)?;
    let (p_inv, inv_assumed) = ctx.p_rh_at(ctx.inverse_k())?;
    let lower_phi = holder_alpha(p_fwd, n)? * phi(d_lower_src, n)?;
    let upper_phi = phi(d_upper_src, n)? / holder_alpha(p_inv, n)?;
    let mut assumptions = Vec::new();
    if fwd_assumed || inv_assumed {
        assumptions.push(
            "p_rh taken from the Sobolev exponent model; proven only for n = 2".to_string(),
        );
    }
    Ok(SpectrumQcBounds {
        t,
        theta_image: 1.0 / (1.0 + t),
        lower_phi,
        upper_phi,
        lo: phi_inv(upper_phi, n),
        hi: phi_inv(lower_phi, n),
        assumptions,
    })
}

/// Smallest dilatation K >= 1 at which the spectrum bounds admit `image` as
/// a quasiconformal image of `source` at shift parameter t. Both constraints
/// relax monotonically in K, so the threshold is found by bisection.
pub fn implied_spectrum_dilatation(
    source: &DimensionProfile,
    image: &DimensionProfile,
    n: u32,
    model: SobolevExponentModel,
    t: f64,
) -> Result<f64> {
    if image.kind != DimensionKind::AssouadSpectrum {
        return Err(Error::parameter("implied dilatation needs assouad_spectrum profiles"));
    }
    let admissible = |k: f64| -> Result<bool> {
        let ctx = DistortionContext::new(n, k, model)?;
        let b = assouad_spectrum_qc_bounds(source, &ctx, t)?;
        let d_img = image.eval(1.0 / (1.0 + t));
        if !(d_img > 0.0) {
            return Ok(true);
        }
        let phi_img = phi(d_img, n)?;
        Ok(phi_img >= b.lower_phi - 1e-12 && phi_img <= b.upper_phi + 1e-12)
    };
    if admissible(1.0)? {
        return Ok(1.0);
    }
    let mut hi = 2.0f64;
    let mut guard = 0;
    while !admissible(hi)? {
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return Err(Error::internal(
                "implied spectrum dilatation did not stabilize below 2^60",
            ));
        }
    }
    let mut lo = hi / 2.0;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if admissible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
