//! Dilatation lower-bound certificates.
//!
//! Any K-quasiconformal map of R^n is locally 1/K-Hoelder, so
//! dim_theta f(E) <= K dim_theta E for every theta; in the plane the exact
//! exponent gives the stronger two-sided constraint
//! Phi(d')/Phi(d) <= K with Phi(x) = 1/x - 1/2. Scanning theta over a dense
//! grid (plus the profiles' breakpoints) and both map directions yields a
//! certified lower bound on the dilatation of any map sending one set onto
//! the other; a Richardson step extrapolates the ratio to theta -> 0 where
//! the supremum for sequence-type sets lives.

use crate::error::{Error, Result};
use crate::formulas::{log_theta_grid, DimensionBundle};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CertificateWitness {
    pub rule: String,
    pub direction: String,
    pub theta: f64,
    /// dimension (or Phi value) of the image side at the witness theta
    pub lhs: f64,
    /// dimension (or Phi value) of the source side at the witness theta
    pub rhs: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationCertificate {
    pub k_lower: f64,
    pub witnesses: Vec<CertificateWitness>,
    pub verdict: String,
    pub grid_points: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct MinDilatationConfig {
    pub grid_points: usize,
    pub theta_min: f64,
}

impl Default for MinDilatationConfig {
    fn default() -> Self {
        MinDilatationConfig {
            grid_points: 512,
            theta_min: 1e-6,
        }
    }
}

struct RuleScan {
    rule: &'static str,
    direction: &'static str,
    best: f64,
    best_theta: f64,
    best_pair: (f64, f64),
    // ratios at the two smallest thetas, for extrapolation
    first_two: Vec<(f64, f64)>,
}

impl RuleScan {
    fn new(rule: &'static str, direction: &'static str) -> Self {
        RuleScan {
            rule,
            direction,
            best: 1.0,
            best_theta: f64::NAN,
            best_pair: (f64::NAN, f64::NAN),
            first_two: Vec::new(),
        }
    }

    fn feed(&mut self, theta: f64, lhs: f64, rhs: f64) {
        if !(lhs > 0.0 && rhs > 0.0) {
            return;
        }
        let ratio = lhs / rhs;
        if self.first_two.len() < 2 {
            self.first_two.push((theta, ratio));
        }
        if ratio > self.best {
            self.best = ratio;
            self.best_theta = theta;
            self.best_pair = (lhs, rhs);
        }
    }

    /// Linear extrapolation of the ratio to theta -> 0 from the two finest
    /// grid values; a lower bound on the liminf-derived constant for the
    /// smooth profiles handled here.
    fn extrapolated(&self) -> Option<f64> {
        if self.first_two.len() < 2 {
            return None;
        }
        let (t1, r1) = self.first_two[0];
        let (t2, r2) = self.first_two[1];
        if !(t2 > t1) {
            return None;
        }
        let r0 = r1 + (r1 - r2) * t1 / (t2 - t1);
        r0.is_finite().then_some(r0)
    }

    fn witness(&self, k_extrap: Option<f64>) -> CertificateWitness {
        match k_extrap {
            Some(k) if k > self.best => CertificateWitness {
                rule: format!("{} (theta->0 extrapolation)", self.rule),
                direction: self.direction.to_string(),
                theta: 0.0,
                lhs: self.first_two[0].1,
                rhs: 1.0,
                bound: k,
            },
            _ => CertificateWitness {
                rule: self.rule.to_string(),
                direction: self.direction.to_string(),
                theta: self.best_theta,
                lhs: self.best_pair.0,
                rhs: self.best_pair.1,
                bound: self.best,
            },
        }
    }
}

/// Certified lower bound on the dilatation of any quasiconformal map sending
/// one bundle's set onto the other's, in either direction.
pub fn min_dilatation(
    e: &DimensionBundle,
    f: &DimensionBundle,
    cfg: &MinDilatationConfig,
) -> Result<ClassificationCertificate> {
    if e.ambient_dim != f.ambient_dim {
        return Err(Error::parameter(format!(
            "classification: ambient dimensions differ ({} vs {})",
            e.ambient_dim, f.ambient_dim
        )));
    }
    if cfg.grid_points < 2 {
        return Err(Error::parameter("classification: grid needs at least 2 points"));
    }
    let n = e.ambient_dim;
    let mut grid = log_theta_grid(cfg.grid_points, cfg.theta_min);
    grid.extend_from_slice(&e.intermediate.breakpoints);
    grid.extend_from_slice(&f.intermediate.breakpoints);
    grid.retain(|&t| t > 0.0 && t <= 1.0);
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();

    let planar = n == 2;
    let phi2 = |d: f64| 1.0 / d - 0.5;
    let mut scans = vec![
        RuleScan::new("holder", "E -> F"),
        RuleScan::new("holder", "F -> E"),
    ];
    if planar {
        scans.push(RuleScan::new("planar-exact", "E -> F"));
        scans.push(RuleScan::new("planar-exact", "F -> E"));
    }
    for &theta in &grid {
        let de = e.intermediate.eval(theta);
        let df = f.intermediate.eval(theta);
        // a map E -> F forces dim F <= K dim E, so K >= dim F / dim E
        scans[0].feed(theta, df, de);
        scans[1].feed(theta, de, df);
        if planar && de > 0.0 && de < 2.0 && df > 0.0 && df < 2.0 {
            // Phi(image) <= K Phi(source)
            scans[2].feed(theta, phi2(df), phi2(de));
            scans[3].feed(theta, phi2(de), phi2(df));
        }
    }
    let mut k_lower = 1.0f64;
    let mut witnesses = Vec::new();
    for scan in &scans {
        let extrap = scan.extrapolated();
        let k_rule = extrap.unwrap_or(1.0).max(scan.best);
        k_lower = k_lower.max(k_rule);
        if scan.best_theta.is_finite() || extrap.is_some() {
            witnesses.push(scan.witness(extrap));
        }
    }
    let verdict = if k_lower > 1.0 + 1e-12 {
        format!(
            "no K-quasiconformal map of R^{n} with K < {k_lower:.9} sends either set onto the other"
        )
    } else {
        "the intermediate-dimension profiles coincide on the grid; no dilatation obstruction found"
            .to_string()
    };
    Ok(ClassificationCertificate {
        k_lower,
        witnesses,
        verdict,
        grid_points: grid.len(),
    })
}
