//! Exponent arithmetic for Sobolev and quasiconformal dimension distortion.
//!
//! For p > n define tau_p(s) = ps/(p-n+s), Phi(s) = 1/s - 1/n, and
//! alpha(p) = 1 - n/p (the Hoelder exponent of W^{1,p} maps). These satisfy
//! alpha(p) Phi(s) = Phi(tau_p(s)), so bounds expressed on the Phi scale
//! convert to dimension bounds by the exact inverse Phi^{-1}(y) = 1/(y+1/n).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// tau_p(s) = p s / (p - n + s). Monotone increasing on [0, n], fixes 0 and
/// n, and tends to s as p -> infinity (the conformal sentinel).
pub fn tau(s: f64, n: u32, p: f64) -> Result<f64> {
    check_dim(n)?;
    if !(s >= 0.0 && s <= n as f64) {
        return Err(Error::parameter(format!("tau: s must lie in [0,{n}], got {s}")));
    }
    if !(p > n as f64) {
        return Err(Error::parameter(format!("tau: p must exceed n = {n}, got {p}")));
    }
    if p.is_infinite() {
        return Ok(s);
    }
    Ok(p * s / (p - n as f64 + s))
}

/// Phi(s) = 1/s - 1/n, the reciprocal-dimension deficit on (0, n].
pub fn phi(s: f64, n: u32) -> Result<f64> {
    check_dim(n)?;
    if !(s > 0.0 && s <= n as f64) {
        return Err(Error::parameter(format!("phi: s must lie in (0,{n}], got {s}")));
    }
    Ok(1.0 / s - 1.0 / n as f64)
}

/// Exact inverse of Phi: y >= 0 maps back to 1/(y + 1/n).
pub fn phi_inv(y: f64, n: u32) -> f64 {
    1.0 / (y + 1.0 / n as f64)
}

/// Hoelder exponent alpha(p) = 1 - n/p of continuous W^{1,p} maps; the
/// infinite-p sentinel gives alpha = 1 (no distortion).
pub fn holder_alpha(p: f64, n: u32) -> Result<f64> {
    check_dim(n)?;
    if !(p > n as f64) {
        return Err(Error::parameter(format!(
            "holder_alpha: p must exceed n = {n}, got {p}"
        )));
    }
    if p.is_infinite() {
        return Ok(1.0);
    }
    Ok(1.0 - n as f64 / p)
}

fn check_dim(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::parameter("ambient dimension must be >= 1"));
    }
    Ok(())
}

/// How a higher-integrability exponent value is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentTag {
    Exact,
    Conjectural,
    LowerBound,
}

/// Model for the Sobolev higher-integrability exponent of K-quasiconformal
/// maps in dimension n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SobolevExponentModel {
    /// Planar exact value 2K/(K-1); valid only with n = 2.
    Exact2D,
    /// The conjectured sharp value nK/(K-1), open for n >= 3.
    Conjectured,
    /// The proven lower bound n lam K / (lam K - 1) with lam = lam(n) >= 1.
    IwaniecMartinLower(f64),
}

impl SobolevExponentModel {
    pub fn validate(&self, n: u32) -> Result<()> {
        check_dim(n)?;
        match self {
            SobolevExponentModel::Exact2D if n != 2 => Err(Error::model(format!(
                "Exact2D Sobolev exponent model requires n = 2, got n = {n}"
            ))),
            SobolevExponentModel::IwaniecMartinLower(lam) if !(*lam >= 1.0) => Err(
                Error::model(format!("IwaniecMartinLower needs lambda >= 1, got {lam}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn tag(&self) -> ExponentTag {
        match self {
            SobolevExponentModel::Exact2D => ExponentTag::Exact,
            SobolevExponentModel::Conjectured => ExponentTag::Conjectural,
            SobolevExponentModel::IwaniecMartinLower(_) => ExponentTag::LowerBound,
        }
    }
}

/// Sobolev higher-integrability exponent p for a K-quasiconformal map under
/// the chosen model. K = 1 returns the infinite sentinel, which propagates
/// through `holder_alpha` and `tau` as zero distortion.
pub fn p_sob(n: u32, k: f64, model: SobolevExponentModel) -> Result<(f64, ExponentTag)> {
    model.validate(n)?;
    if !(k >= 1.0) {
        return Err(Error::parameter(format!("p_sob: K must be >= 1, got {k}")));
    }
    if k == 1.0 {
        return Ok((f64::INFINITY, model.tag()));
    }
    let p = match model {
        SobolevExponentModel::Exact2D => 2.0 * k / (k - 1.0),
        SobolevExponentModel::Conjectured => n as f64 * k / (k - 1.0),
        SobolevExponentModel::IwaniecMartinLower(lam) => {
            n as f64 * lam * k / (lam * k - 1.0)
        }
    };
    Ok((p, model.tag()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn tau_hand_values() {
        assert!((tau(1.0, 2, 4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(tau(2.0, 2, 4.0).unwrap(), 2.0); // fixed point s = n
        assert_eq!(tau(0.0, 2, 4.0).unwrap(), 0.0);
        assert!(tau(1.0, 2, 2.0).is_err()); // p <= n
    }

    #[test]
    fn phi_alpha_basics() {
        assert_eq!(phi(2.0, 2).unwrap(), 0.0);
        assert!((holder_alpha(4.0, 2).unwrap() - 0.5).abs() < 1e-15); // p = 2n
        assert_eq!(holder_alpha(f64::INFINITY, 3).unwrap(), 1.0);
        // identity at (s=1, n=2, p=4): alpha phi = 1/4 = phi(4/3)
        let lhs = holder_alpha(4.0, 2).unwrap() * phi(1.0, 2).unwrap();
        let rhs = phi(tau(1.0, 2, 4.0).unwrap(), 2).unwrap();
        assert!((lhs - 0.25).abs() < 1e-15 && (rhs - 0.25).abs() < 1e-15);
    }

    #[test]
    fn distortion_identity_on_random_samples() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..10_000 {
            let n = 1 + (rng.next_u64() % 4) as u32;
            let s = rng.range(0.05, 0.95) * n as f64;
            let p = n as f64 * rng.range(1.05, 100.0);
            let lhs = holder_alpha(p, n).unwrap() * phi(s, n).unwrap();
            let rhs = phi(tau(s, n, p).unwrap(), n).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-14,
                "identity violated at s={s}, n={n}, p={p}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn tau_monotone_and_dominates_s() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..2000 {
            let n = 1 + (rng.next_u64() % 3) as u32;
            let p = n as f64 + rng.range(0.1, 40.0);
            let s1 = rng.range(0.0, n as f64);
            let s2 = rng.range(0.0, n as f64);
            let (lo, hi) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
            let t_lo = tau(lo, n, p).unwrap();
            let t_hi = tau(hi, n, p).unwrap();
            assert!(t_lo <= t_hi + 1e-15);
            assert!(t_hi >= hi - 1e-15); // tau_p(s) >= s on [0, n]
        }
        // tau_p(s) -> s as p grows
        let mut prev = f64::INFINITY;
        for p in [3.0, 10.0, 100.0, 1e6] {
            let d = (tau(1.0, 2, p).unwrap() - 1.0).abs();
            assert!(d <= prev);
            prev = d;
        }
    }

    #[test]
    fn p_sob_models() {
        let (p, tag) = p_sob(2, 2.0, SobolevExponentModel::Exact2D).unwrap();
        assert_eq!(p, 4.0);
        assert_eq!(tag, ExponentTag::Exact);
        let (p, _) = p_sob(3, 2.0, SobolevExponentModel::IwaniecMartinLower(1.0)).unwrap();
        assert_eq!(p, 6.0);
        let (p, tag) = p_sob(3, 1.0, SobolevExponentModel::Conjectured).unwrap();
        assert!(p.is_infinite());
        assert_eq!(tag, ExponentTag::Conjectural);
        assert!(p_sob(3, 2.0, SobolevExponentModel::Exact2D).is_err());
        assert!(p_sob(2, 0.5, SobolevExponentModel::Exact2D).is_err());
    }
}
