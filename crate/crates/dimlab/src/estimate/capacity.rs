//! Capacitary energies for the two-scale kernel
//! `phi(u) = min{1, (r/u)^s, r^{theta(m-s)+s}/u^m}`, with `phi(0) = 1`.
//!
//! The capacity of a finite set is the reciprocal of the minimal kernel
//! energy over probability measures on it. The minimizer is computed by
//! Frank-Wolfe over the simplex (with away steps and exact line search); the
//! Frank-Wolfe gap certifies convergence, and the minimizer's potential is
//! constant on its support at equilibrium.

use crate::error::{Error, Result};
use crate::estimate::dyadic::intermediate_cover_cost;
use crate::point_set::PointSet;
use crate::util::SplitMix64;
use serde::Serialize;

/// Parameters of the kernel phi_{r,theta}^{s,m}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelParams {
    pub r: f64,
    pub theta: f64,
    pub s: f64,
    pub m: u32,
}

impl KernelParams {
    pub fn new(r: f64, theta: f64, s: f64, m: u32) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::parameter(format!("kernel: r must lie in (0,1), got {r}")));
        }
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::parameter(format!(
                "kernel: theta must lie in (0,1], got {theta}"
            )));
        }
        if m < 1 {
            return Err(Error::parameter("kernel: m must be >= 1"));
        }
        if !(s > 0.0 && s <= m as f64) {
            return Err(Error::parameter(format!(
                "kernel: s must lie in (0, m], got s={s}, m={m}"
            )));
        }
        Ok(KernelParams { r, theta, s, m })
    }
}

/// Kernel value at distance `u >= 0`.
pub fn kernel_phi(u: f64, kp: &KernelParams) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(Error::parameter(format!("kernel: u must be >= 0, got {u}")));
    }
    Ok(kernel_phi_unchecked(u, kp))
}

#[inline]
pub(crate) fn kernel_phi_unchecked(u: f64, kp: &KernelParams) -> f64 {
    if u == 0.0 {
        return 1.0;
    }
    let mid = (kp.r / u).powf(kp.s);
    let tail = kp.r.powf(kp.theta * (kp.m as f64 - kp.s) + kp.s) / u.powi(kp.m as i32);
    1f64.min(mid).min(tail)
}

/// Nonnegative weights summing to one, indexed by the points of a set.
#[derive(Debug, Clone, Serialize)]
pub struct DiscreteMeasure {
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::parameter("measure: weights must be non-empty"));
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::parameter("measure: weights must be nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::parameter(format!(
                "measure: weights sum to {total}, expected 1 within 1e-12"
            )));
        }
        Ok(DiscreteMeasure { weights })
    }

    pub fn uniform(len: usize) -> Self {
        DiscreteMeasure {
            weights: vec![1.0 / len as f64; len],
        }
    }

    pub fn point_mass(len: usize, at: usize) -> Self {
        let mut w = vec![0.0; len];
        w[at] = 1.0;
        DiscreteMeasure { weights: w }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > tol)
            .map(|(i, _)| i)
            .collect()
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Dense kernel matrix phi(|x_i - x_j|).
pub fn kernel_matrix(x: &PointSet, kp: &KernelParams) -> Vec<Vec<f64>> {
    let pts = x.points();
    let n = pts.len();
    let mut mat = vec![vec![0.0; n]; n];
    for i in 0..n {
        mat[i][i] = 1.0;
        for j in (i + 1)..n {
            let v = kernel_phi_unchecked(dist(&pts[i], &pts[j]), kp);
            mat[i][j] = v;
            mat[j][i] = v;
        }
    }
    mat
}

/// Double sum  sum_ij w_i w_j phi(|x_i - x_j|); the diagonal contributes
/// phi(0) = 1 per atom, so energies of atomic measures are at least
/// sum_i w_i^2 and capacities never exceed the support size.
pub fn energy(mu: &DiscreteMeasure, x: &PointSet, kp: &KernelParams) -> Result<f64> {
    if mu.weights().len() != x.len() {
        return Err(Error::parameter(format!(
            "energy: measure has {} weights for {} points",
            mu.weights().len(),
            x.len()
        )));
    }
    let pts = x.points();
    let w = mu.weights();
    let mut total = 0.0;
    for i in 0..pts.len() {
        total += w[i] * w[i];
        for j in (i + 1)..pts.len() {
            total += 2.0 * w[i] * w[j] * kernel_phi_unchecked(dist(&pts[i], &pts[j]), kp);
        }
    }
    Ok(total)
}

/// Frank-Wolfe configuration. Defaults follow the convergence contract:
/// stop at gap <= 1e-8 or 10^4 iterations.
#[derive(Debug, Clone, Copy)]
pub struct FwConfig {
    pub gap_tol: f64,
    pub max_iters: usize,
}

impl Default for FwConfig {
    fn default() -> Self {
        FwConfig {
            gap_tol: 1e-8,
            max_iters: 10_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacityResult {
    pub capacity: f64,
    pub energy: f64,
    pub measure: DiscreteMeasure,
    /// potential (Phi w)_i at the final iterate
    pub potential: Vec<f64>,
    pub duality_gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl CapacityResult {
    /// Max |potential - energy| over the support of the minimizer; zero at
    /// an exact equilibrium measure.
    pub fn equilibrium_deviation(&self) -> f64 {
        self.measure
            .support(1e-12)
            .into_iter()
            .map(|i| (self.potential[i] - self.energy).abs())
            .fold(0.0, f64::max)
    }
}

// Exact minimizer of w' Phi w over the affine slice {sum w = 1} restricted to
// the given support: solve Phi_S z = 1 and normalize. Returns None when the
// restricted system is near-singular or the solution leaves the simplex.
fn support_solve(mat: &[Vec<f64>], support: &[usize], n: usize) -> Option<Vec<f64>> {
    let k = support.len();
    if k == 0 || k > 2048 {
        return None;
    }
    let mut a = vec![vec![0.0f64; k + 1]; k];
    for (r, &i) in support.iter().enumerate() {
        for (c, &j) in support.iter().enumerate() {
            a[r][c] = mat[i][j];
        }
        a[r][k] = 1.0; // rhs
    }
    for col in 0..k {
        let (piv, mx) = (col..k)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if mx < 1e-13 {
            return None;
        }
        a.swap(col, piv);
        for r in (col + 1)..k {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..=k {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut z = vec![0.0f64; k];
    for col in (0..k).rev() {
        let mut acc = a[col][k];
        for c in (col + 1)..k {
            acc -= a[col][c] * z[c];
        }
        z[col] = acc / a[col][col];
    }
    let total: f64 = z.iter().sum();
    if !(total > 0.0) {
        return None;
    }
    let mut w = vec![0.0f64; n];
    for (r, &i) in support.iter().enumerate() {
        let v = z[r] / total;
        if v < 0.0 {
            return None;
        }
        w[i] = v;
    }
    Some(w)
}

/// Minimize the kernel energy over the probability simplex and return the
/// capacity 1/energy, the minimizer, and the Frank-Wolfe duality gap.
///
/// Steps are pairwise (mass moves from the worst support vertex to the
/// linear-oracle vertex, with exact line search); every refresh interval the
/// potential is recomputed exactly and an exact solve on the current support
/// is attempted, which snaps the iterate to the equilibrium measure once the
/// support has stabilized. The reported gap is always computed from a fresh
/// potential.
pub fn capacity(x: &PointSet, kp: &KernelParams, cfg: &FwConfig) -> Result<CapacityResult> {
    let n = x.len();
    let mat = kernel_matrix(x, kp);
    let refresh = 64;
    let mut w = vec![1.0 / n as f64; n];
    let mut q: Vec<f64> = (0..n)
        .map(|i| mat[i].iter().sum::<f64>() / n as f64)
        .collect();
    let mut e: f64 = w.iter().zip(&q).map(|(wi, qi)| wi * qi).sum();
    let mut iters = 0;
    while iters < cfg.max_iters {
        iters += 1;
        // gradient is 2q; the linear oracle picks the vertex of least potential
        let (i_fw, &q_fw) = q
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let gap = 2.0 * (e - q_fw);
        if gap <= cfg.gap_tol {
            break;
        }
        // worst support vertex
        let (i_aw, &q_aw) = q
            .iter()
            .enumerate()
            .filter(|&(i, _)| w[i] > 0.0)
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        if i_fw != i_aw {
            // pairwise direction d = e_fw - e_aw, step capped by w_aw
            let qd = q_fw - q_aw;
            let dphid = mat[i_fw][i_fw] + mat[i_aw][i_aw] - 2.0 * mat[i_fw][i_aw];
            let gamma = if dphid > 0.0 {
                (-qd / dphid).min(w[i_aw])
            } else {
                w[i_aw]
            };
            if gamma > 0.0 {
                w[i_fw] += gamma;
                w[i_aw] -= gamma;
                if w[i_aw] < 1e-18 {
                    w[i_aw] = 0.0;
                }
                let (col_f, col_a) = (&mat[i_fw], &mat[i_aw]);
                for k in 0..n {
                    q[k] += gamma * (col_f[k] - col_a[k]);
                }
                e = w.iter().zip(&q).map(|(wi, qi)| wi * qi).sum();
            }
        }
        if iters % refresh == 0 {
            // drift control and equilibrium snap
            for (k, qk) in q.iter_mut().enumerate() {
                *qk = mat[k].iter().zip(&w).map(|(m, wi)| m * wi).sum();
            }
            e = w.iter().zip(&q).map(|(wi, qi)| wi * qi).sum();
            let support: Vec<usize> = (0..n).filter(|&i| w[i] > 1e-14).collect();
            if let Some(cand) = support_solve(&mat, &support, n) {
                let qc: Vec<f64> = (0..n)
                    .map(|i| mat[i].iter().zip(&cand).map(|(m, wi)| m * wi).sum())
                    .collect();
                let ec: f64 = cand.iter().zip(&qc).map(|(wi, qi)| wi * qi).sum();
                if ec <= e {
                    w = cand;
                    q = qc;
                    e = ec;
                }
            }
        }
    }
    // exact potential for the reported gap and equilibrium diagnostics
    let total: f64 = w.iter().sum();
    for wk in &mut w {
        *wk /= total;
    }
    let measure = DiscreteMeasure::new(w)?;
    let e_final = energy(&measure, x, kp)?;
    let potential: Vec<f64> = (0..n)
        .map(|i| {
            mat[i]
                .iter()
                .zip(measure.weights())
                .map(|(m, w)| m * w)
                .sum()
        })
        .collect();
    let q_min = potential.iter().cloned().fold(f64::INFINITY, f64::min);
    let gap = 2.0 * (e_final - q_min);
    Ok(CapacityResult {
        capacity: 1.0 / e_final,
        energy: e_final,
        measure,
        potential,
        duality_gap: gap,
        iterations: iters,
        converged: gap <= cfg.gap_tol,
    })
}

/// Two-sided comparison of the capacity and covering-sum formulations at one
/// scale: the covering sum dominates r^s C, and exceeds it by at most a
/// log(diam/r) factor times a dimensional constant.
#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub r: f64,
    pub theta: f64,
    pub s: f64,
    pub covering_sum: f64,
    pub capacity: f64,
    /// r^s * capacity, the lower member of the chain
    pub capacity_side: f64,
    pub log_factor: f64,
    /// empirical constant  S / (log(diam/r) r^s C)
    pub upper_ratio: f64,
    pub lower_ok: bool,
    pub duality_gap: f64,
}

pub fn capacity_cover_sandwich_check(
    x: &PointSet,
    r: f64,
    theta: f64,
    s: f64,
) -> Result<SandwichReport> {
    let kp = KernelParams::new(r, theta, s, x.ambient_dim() as u32)?;
    let cap = capacity(x, &kp, &FwConfig::default())?;
    let delta = r.powf(theta);
    let (covering_sum, _) = intermediate_cover_cost(x, theta, delta, s)?;
    let capacity_side = r.powf(s) * cap.capacity;
    let log_factor = (x.diameter().max(r * (1.0 + 1e-9)) / r).ln();
    let upper_ratio = covering_sum / (capacity_side * log_factor);
    Ok(SandwichReport {
        r,
        theta,
        s,
        covering_sum,
        capacity: cap.capacity,
        capacity_side,
        log_factor,
        upper_ratio,
        lower_ok: covering_sum >= capacity_side * (1.0 - 1e-9),
        duality_gap: cap.duality_gap,
    })
}

/// Monte-Carlo check of the symmetrisation inequality
/// int_B phi(|a x - y|) dx <= int_B phi(|a x|) dx for y in the unit ball.
/// Uses common random points for both integrals and reports the paired
/// standard error.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetrizationSample {
    pub shifted: f64,
    pub centered: f64,
    pub diff: f64,
    pub stderr: f64,
}

pub fn symmetrization_mc(
    kp: &KernelParams,
    a: f64,
    y: &[f64],
    samples: usize,
    seed: u64,
) -> Result<SymmetrizationSample> {
    if !(a > 0.0) {
        return Err(Error::parameter("symmetrization: a must be positive"));
    }
    let dim = y.len();
    if dim == 0 || y.iter().map(|c| c * c).sum::<f64>() > 1.0 + 1e-12 {
        return Err(Error::parameter("symmetrization: y must lie in the unit ball"));
    }
    let mut rng = SplitMix64::new(seed);
    let mut sum_d = 0.0;
    let mut sum_d2 = 0.0;
    let mut sum_shift = 0.0;
    let mut sum_center = 0.0;
    for _ in 0..samples {
        let xp = rng.in_unit_ball(dim);
        let shifted_dist = xp
            .iter()
            .zip(y)
            .map(|(xc, yc)| (a * xc - yc) * (a * xc - yc))
            .sum::<f64>()
            .sqrt();
        let centered_dist = a * xp.iter().map(|c| c * c).sum::<f64>().sqrt();
        let f = kernel_phi_unchecked(shifted_dist, kp);
        let g = kernel_phi_unchecked(centered_dist, kp);
        let d = f - g;
        sum_d += d;
        sum_d2 += d * d;
        sum_shift += f;
        sum_center += g;
    }
    let n = samples as f64;
    let mean = sum_d / n;
    let var = (sum_d2 / n - mean * mean).max(0.0);
    Ok(SymmetrizationSample {
        shifted: sum_shift / n,
        centered: sum_center / n,
        diff: mean,
        stderr: (var / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::gen_sequence_set;

    fn kp(r: f64, theta: f64, s: f64, m: u32) -> KernelParams {
        KernelParams::new(r, theta, s, m).unwrap()
    }

    #[test]
    fn kernel_branches() {
        let k = kp(0.01, 0.5, 1.0, 2);
        assert_eq!(kernel_phi(0.0, &k).unwrap(), 1.0);
        assert_eq!(kernel_phi(0.005, &k).unwrap(), 1.0); // u <= r
        // u = r^theta: branches 2 and 3 agree at r^{(1-theta)s}
        let u = 0.01f64.powf(0.5);
        let expect = 0.01f64.powf(0.5);
        assert!((kernel_phi(u, &k).unwrap() - expect).abs() < 1e-15);
        // theta = 1, s = m: Falconer box kernel min{1, (r/u)^m}
        let k1 = kp(0.01, 1.0, 2.0, 2);
        for u in [0.005f64, 0.02, 0.3] {
            let expect = 1f64.min((0.01 / u).powi(2));
            assert!((kernel_phi(u, &k1).unwrap() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn kernel_is_nonincreasing_and_continuous() {
        let k = kp(0.02, 0.6, 1.3, 2);
        let mut prev = 1.0;
        let mut u = 1e-4;
        while u < 2.0 {
            let v = kernel_phi(u, &k).unwrap();
            assert!(v <= prev + 1e-12);
            assert!(v > 0.0 && v <= 1.0);
            prev = v;
            u *= 1.01;
        }
    }

    #[test]
    fn energy_point_mass_is_one() {
        let ps = PointSet::new(1, vec![vec![0.2], vec![0.8]], 0.01, "two").unwrap();
        let mu = DiscreteMeasure::point_mass(2, 0);
        let e = energy(&mu, &ps, &kp(0.01, 0.5, 1.0, 1)).unwrap();
        assert!((e - 1.0).abs() < 1e-15);
    }

    #[test]
    fn energy_two_point_hand_expansion() {
        // uniform weights on 2 points at distance d > r^theta:
        // E = 1/2 + 1/2 r^{theta(m-s)+s} / d^m
        let d: f64 = 0.6;
        let ps = PointSet::new(1, vec![vec![0.1], vec![0.1 + d]], 0.001, "pair").unwrap();
        let k = kp(0.01, 0.5, 0.8, 1);
        let mu = DiscreteMeasure::uniform(2);
        let e = energy(&mu, &ps, &k).unwrap();
        let expect = 0.5 + 0.5 * 0.01f64.powf(0.5 * (1.0 - 0.8) + 0.8) / d;
        assert!((e - expect).abs() < 1e-15, "{e} vs {expect}");
    }

    #[test]
    fn energy_matches_quadrature_oracle_on_equispaced_points() {
        // uniform measure on k >> 1 equispaced points vs the Riemann integral
        // of phi over [0,1]^2 pairs, within 1%
        let k = 400;
        let pts: Vec<Vec<f64>> = (0..k).map(|i| vec![i as f64 / k as f64]).collect();
        let ps = PointSet::new(1, pts, 1.0 / k as f64, "grid").unwrap();
        let kpars = kp(0.05, 0.7, 0.9, 1);
        let mu = DiscreteMeasure::uniform(k);
        let e = energy(&mu, &ps, &kpars).unwrap();
        // oracle: 2D midpoint quadrature on a finer grid
        let q = 1600;
        let mut acc = 0.0;
        for i in 0..q {
            for j in 0..q {
                let x = (i as f64 + 0.5) / q as f64;
                let y = (j as f64 + 0.5) / q as f64;
                acc += kernel_phi_unchecked((x - y).abs(), &kpars);
            }
        }
        let oracle = acc / (q * q) as f64;
        assert!((e - oracle).abs() / oracle < 0.01, "{e} vs {oracle}");
    }

    #[test]
    fn capacity_of_singleton_is_one() {
        let ps = PointSet::new(1, vec![vec![0.5]], 0.01, "one").unwrap();
        let res = capacity(&ps, &kp(0.01, 0.5, 1.0, 1), &FwConfig::default()).unwrap();
        assert!((res.capacity - 1.0).abs() < 1e-12);
        assert!(res.converged);
    }

    #[test]
    fn capacity_of_clustered_pair_is_one() {
        // both points within r: kernel constant 1, every measure has energy 1
        let ps = PointSet::new(1, vec![vec![0.5], vec![0.5001]], 1e-5, "pair").unwrap();
        let res = capacity(&ps, &kp(0.01, 0.5, 1.0, 1), &FwConfig::default()).unwrap();
        assert!((res.capacity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn equilibrium_potential_is_constant_on_support() {
        let ps = gen_sequence_set(1.0, 64).unwrap();
        let res = capacity(&ps, &kp(0.01, 0.5, 0.5, 1), &FwConfig::default()).unwrap();
        assert!(res.converged, "gap {}", res.duality_gap);
        assert!(
            res.equilibrium_deviation() < 1e-6,
            "deviation {}",
            res.equilibrium_deviation()
        );
    }

    #[test]
    fn capacity_is_relabel_invariant() {
        let pts = vec![vec![0.1], vec![0.35], vec![0.77], vec![0.92]];
        let mut rev = pts.clone();
        rev.reverse();
        let a = PointSet::new(1, pts, 1e-3, "fwd").unwrap();
        let b = PointSet::new(1, rev, 1e-3, "rev").unwrap();
        let k = kp(0.05, 0.5, 1.0, 1);
        let ra = capacity(&a, &k, &FwConfig::default()).unwrap();
        let rb = capacity(&b, &k, &FwConfig::default()).unwrap();
        assert!((ra.energy - rb.energy).abs() < 1e-10);
    }

    #[test]
    fn sandwich_chain_on_random_planar_set() {
        let mut rng = SplitMix64::new(11);
        let pts: Vec<Vec<f64>> = (0..64)
            .map(|_| vec![rng.next_f64(), rng.next_f64()])
            .collect();
        let ps = PointSet::new(2, pts, 1e-9, "random64").unwrap();
        let rep = capacity_cover_sandwich_check(&ps, 2f64.powi(-6), 0.5, 1.0).unwrap();
        assert!(rep.lower_ok, "S = {} < r^s C = {}", rep.covering_sum, rep.capacity_side);
        assert!(rep.upper_ratio.is_finite() && rep.upper_ratio > 0.0);
    }

    #[test]
    fn symmetrization_inequality_holds_within_3_sigma() {
        let k = kp(0.01, 0.5, 1.0, 2);
        let mut rng = SplitMix64::new(5);
        for a in [0.5, 1.0, 2.0] {
            let y = rng.in_unit_ball(2);
            let rep = symmetrization_mc(&k, a, &y, 100_000, 17).unwrap();
            assert!(
                rep.diff <= 3.0 * rep.stderr,
                "a={a}: diff {} stderr {}",
                rep.diff,
                rep.stderr
            );
        }
    }
}
