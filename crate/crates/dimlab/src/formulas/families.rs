//! Closed-form dimension profiles for the remaining generator families:
//! polynomially decaying sequence sets, inverted power lattices, and
//! percolation samples; plus the bundle type collecting everything a
//! classification certificate needs about one set.

use crate::error::{Error, Result};
use crate::formulas::carpet_formulas::{
    bm_assouad, bm_box, bm_hausdorff, bm_intermediate, bm_lower, bm_profile,
};
use crate::formulas::profile::{DimensionKind, DimensionProfile};
use crate::sets::CarpetSpec;

/// Dimensions of the sequence set {m^-s} u {0}: Hausdorff 0, intermediate
/// theta/(theta+s), box 1/(1+s), Assouad spectrum min{1, 1/((1+s)(1-theta))},
/// Assouad 1.
pub fn seq_profile(s: f64, kind: DimensionKind) -> Result<DimensionProfile> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::parameter(format!("seq profile: s must be positive, got {s}")));
    }
    let profile = match kind {
        DimensionKind::Hausdorff | DimensionKind::QuasiHausdorff | DimensionKind::Lower => {
            DimensionProfile::constant(kind, 1, 0.0)
        }
        DimensionKind::Box => DimensionProfile::constant(kind, 1, 1.0 / (1.0 + s)),
        DimensionKind::Assouad | DimensionKind::QuasiAssouad => {
            DimensionProfile::constant(kind, 1, 1.0)
        }
        DimensionKind::Intermediate => {
            DimensionProfile::closed(kind, 1, move |t| t / (t + s))
        }
        DimensionKind::AssouadSpectrum => {
            let knee = s / (1.0 + s); // where the spectrum saturates at 1
            DimensionProfile::closed(kind, 1, move |t| {
                (1.0 / ((1.0 + s) * (1.0 - t).max(f64::MIN_POSITIVE))).min(1.0)
            })
            .with_breakpoints(vec![knee])
        }
    };
    Ok(profile.with_family("seq").with_params([("s", s)]))
}

/// Dimensions of the inverted lattice f_alpha({1^s,2^s,...}^n): intermediate
/// n theta/(theta + s alpha), box n/(1 + s alpha), Assouad n, Hausdorff and
/// lower 0. The Assouad spectrum of this family has no closed form here.
pub fn g_set_profile(s: f64, n: u32, alpha: f64, kind: DimensionKind) -> Result<DimensionProfile> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::parameter(format!("g-set profile: s must be positive, got {s}")));
    }
    if n == 0 {
        return Err(Error::parameter("g-set profile: n must be >= 1"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::parameter(format!(
            "g-set profile: alpha must lie in (0,1], got {alpha}"
        )));
    }
    let nf = n as f64;
    let profile = match kind {
        DimensionKind::Hausdorff | DimensionKind::QuasiHausdorff | DimensionKind::Lower => {
            DimensionProfile::constant(kind, n, 0.0)
        }
        DimensionKind::Box => DimensionProfile::constant(kind, n, nf / (1.0 + s * alpha)),
        DimensionKind::Assouad | DimensionKind::QuasiAssouad => {
            DimensionProfile::constant(kind, n, nf)
        }
        DimensionKind::Intermediate => {
            DimensionProfile::closed(kind, n, move |t| nf * t / (t + s * alpha))
        }
        DimensionKind::AssouadSpectrum => {
            return Err(Error::parameter(
                "g-set profile: no closed form for the Assouad spectrum of this family",
            ))
        }
    };
    Ok(profile
        .with_family("gset")
        .with_params([("s", s), ("n", nf), ("alpha", alpha)]))
}

/// Almost-sure dimension profile of a percolation sample, together with the
/// almost-sure-extinction flag (p <= M^-n). Conditioned on survival, every
/// notion except Assouad equals n - log(1/p)/log M; the Assouad dimension is
/// the full n.
pub fn percolation_profile(
    n: u32,
    base: u32,
    p: f64,
    kind: DimensionKind,
) -> Result<(DimensionProfile, bool)> {
    if n == 0 || base < 2 {
        return Err(Error::parameter("percolation profile: need n >= 1 and M >= 2"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::parameter(format!(
            "percolation profile: p must lie in (0,1), got {p}"
        )));
    }
    let nf = n as f64;
    let extinct = p <= (base as f64).powi(-(n as i32));
    let value = match kind {
        DimensionKind::Assouad => nf,
        DimensionKind::Lower => {
            return Err(Error::parameter(
                "percolation profile: no almost-sure formula for the lower dimension",
            ))
        }
        _ => nf - (1.0 / p).ln() / (base as f64).ln(),
    };
    let profile = DimensionProfile::constant(kind, n, value)
        .with_family("percolation")
        .with_params([("n", nf), ("M", base as f64), ("p", p)]);
    Ok((profile, extinct))
}

/// Everything the distortion calculus needs to know about one set: the four
/// endpoint dimensions plus the theta-parametrized profiles.
#[derive(Debug, Clone)]
pub struct DimensionBundle {
    pub ambient_dim: u32,
    pub family: String,
    pub hausdorff: f64,
    pub box_dim: f64,
    pub assouad: f64,
    pub lower: f64,
    pub quasi_hausdorff: f64,
    pub intermediate: DimensionProfile,
    pub assouad_spectrum: Option<DimensionProfile>,
}

impl DimensionBundle {
    /// Sequence set {m^-s} u {0}, optionally embedded in a higher ambient
    /// dimension (coordinates padded by zeros do not change any dimension).
    pub fn sequence(s: f64, ambient_dim: u32) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::parameter("bundle: ambient_dim must be >= 1"));
        }
        Ok(DimensionBundle {
            ambient_dim,
            family: format!("seq(s={s})"),
            hausdorff: 0.0,
            box_dim: 1.0 / (1.0 + s),
            assouad: 1.0,
            lower: 0.0,
            quasi_hausdorff: 0.0,
            intermediate: seq_profile(s, DimensionKind::Intermediate)?.with_ambient(ambient_dim),
            assouad_spectrum: Some(
                seq_profile(s, DimensionKind::AssouadSpectrum)?.with_ambient(ambient_dim),
            ),
        })
    }

    pub fn carpet(spec: &CarpetSpec) -> Result<Self> {
        spec.validate()?;
        Ok(DimensionBundle {
            ambient_dim: 2,
            family: format!(
                "bm(m={},n={},digits={})",
                spec.base_x,
                spec.base_y,
                spec.digit_count()
            ),
            hausdorff: bm_hausdorff(spec),
            box_dim: bm_box(spec),
            assouad: bm_assouad(spec),
            lower: bm_lower(spec),
            quasi_hausdorff: bm_hausdorff(spec),
            intermediate: bm_profile(spec, DimensionKind::Intermediate)?,
            assouad_spectrum: Some(bm_profile(spec, DimensionKind::AssouadSpectrum)?),
        })
    }

    pub fn g_set(s: f64, n: u32, alpha: f64) -> Result<Self> {
        Ok(DimensionBundle {
            ambient_dim: n,
            family: format!("gset(s={s},n={n},alpha={alpha})"),
            hausdorff: 0.0,
            box_dim: n as f64 / (1.0 + s * alpha),
            assouad: n as f64,
            lower: 0.0,
            quasi_hausdorff: 0.0,
            intermediate: g_set_profile(s, n, alpha, DimensionKind::Intermediate)?,
            assouad_spectrum: None,
        })
    }

    pub fn percolation(n: u32, base: u32, p: f64) -> Result<(Self, bool)> {
        let (intermediate, extinct) =
            percolation_profile(n, base, p, DimensionKind::Intermediate)?;
        let value = intermediate.eval(1.0);
        let (spectrum, _) = percolation_profile(n, base, p, DimensionKind::AssouadSpectrum)?;
        Ok((
            DimensionBundle {
                ambient_dim: n,
                family: format!("percolation(n={n},M={base},p={p})"),
                hausdorff: value,
                box_dim: value,
                assouad: n as f64,
                lower: 0.0,
                quasi_hausdorff: value,
                intermediate,
                assouad_spectrum: Some(spectrum),
            },
            extinct,
        ))
    }

    /// Carpet intermediate value via the recursion solver (convenience).
    pub fn carpet_intermediate(spec: &CarpetSpec, theta: f64) -> Result<f64> {
        bm_intermediate(spec, theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seq_profile_fixture_values() {
        let p = seq_profile(1.0, DimensionKind::Intermediate).unwrap();
        assert!((p.eval(0.5) - 1.0 / 3.0).abs() < 1e-15);
        let p = seq_profile(1.0, DimensionKind::AssouadSpectrum).unwrap();
        assert!((p.eval(0.5) - 1.0).abs() < 1e-15);
        let p = seq_profile(2.0, DimensionKind::Box).unwrap();
        assert!((p.eval(1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!(seq_profile(0.0, DimensionKind::Box).is_err());
    }

    #[test]
    fn seq_spectrum_knee() {
        // spectrum reaches 1 exactly at theta = s/(1+s)
        let p = seq_profile(1.0, DimensionKind::AssouadSpectrum).unwrap();
        assert!((p.eval(0.25) - 1.0 / (2.0 * 0.75)).abs() < 1e-15);
        assert_eq!(p.eval(0.75), 1.0);
        assert_eq!(p.breakpoints, vec![0.5]);
    }

    #[test]
    fn g_set_profile_values() {
        // (s=1, n=2, alpha=1/2, theta=1/2) -> 1
        let p = g_set_profile(1.0, 2, 0.5, DimensionKind::Intermediate).unwrap();
        assert!((p.eval(0.5) - 1.0).abs() < 1e-15);
        // theta = 1 -> n/(1+s alpha)
        let b = g_set_profile(1.0, 2, 0.5, DimensionKind::Box).unwrap();
        assert!((p.eval(1.0) - b.eval(1.0)).abs() < 1e-15);
        // alpha = 1 reduces to the inverted lattice formula d theta/(s+theta)
        let p = g_set_profile(2.0, 3, 1.0, DimensionKind::Intermediate).unwrap();
        assert!((p.eval(0.4) - 3.0 * 0.4 / (2.0 + 0.4)).abs() < 1e-15);
    }

    #[test]
    fn percolation_profile_values() {
        let (_, extinct) = percolation_profile(2, 3, 1.0 / 9.0, DimensionKind::Box).unwrap();
        assert!(extinct);
        let (p, extinct) = percolation_profile(2, 3, 0.5, DimensionKind::Box).unwrap();
        assert!(!extinct);
        let expect = 2.0 - 2f64.ln() / 3f64.ln();
        assert!((p.eval(1.0) - expect).abs() < 1e-14);
        let (a, _) = percolation_profile(2, 3, 0.5, DimensionKind::Assouad).unwrap();
        assert_eq!(a.eval(0.5), 2.0);
    }

    #[test]
    fn intermediate_profiles_reach_box_value_at_theta_one() {
        let cases: Vec<(DimensionProfile, f64)> = vec![
            (
                seq_profile(1.5, DimensionKind::Intermediate).unwrap(),
                1.0 / 2.5,
            ),
            (
                g_set_profile(2.0, 2, 0.6, DimensionKind::Intermediate).unwrap(),
                2.0 / 2.2,
            ),
            (
                crate::formulas::bm_profile(
                    &CarpetSpec::new(2, 3, [(1, 1), (1, 3), (2, 1)]).unwrap(),
                    DimensionKind::Intermediate,
                )
                .unwrap(),
                1.0 + (1.5f64).ln() / 3f64.ln(),
            ),
        ];
        for (profile, box_value) in cases {
            let near_one = profile.eval(1.0 - 1e-12);
            assert!(
                (near_one - box_value).abs() < 1e-9,
                "{}: {near_one} vs box {box_value}",
                profile.family
            );
        }
    }

    #[test]
    fn chain_holds_for_every_closed_family_on_a_fine_grid() {
        // Hausdorff <= intermediate <= box <= spectrum <= Assouad at each of
        // 99 theta values, with at most 1e-12 slack
        let bundles = vec![
            DimensionBundle::sequence(1.0, 1).unwrap(),
            DimensionBundle::sequence(3.0, 1).unwrap(),
            DimensionBundle::carpet(
                &CarpetSpec::new(2, 3, [(1, 1), (1, 3), (2, 1)]).unwrap(),
            )
            .unwrap(),
            DimensionBundle::g_set(1.0, 2, 0.7).unwrap(),
            DimensionBundle::percolation(2, 3, 0.5).unwrap().0,
        ];
        for b in &bundles {
            for i in 1..=99 {
                let theta = i as f64 / 100.0;
                let inter = b.intermediate.eval(theta);
                assert!(b.hausdorff <= inter + 1e-12, "{}: H > inter", b.family);
                assert!(inter <= b.box_dim + 1e-12, "{}: inter > box at {theta}", b.family);
                if let Some(spec) = &b.assouad_spectrum {
                    let sp = spec.eval(theta);
                    assert!(b.box_dim <= sp + 1e-12, "{}: box > spectrum", b.family);
                    assert!(sp <= b.assouad + 1e-12, "{}: spectrum > assouad", b.family);
                }
            }
        }
    }
}
