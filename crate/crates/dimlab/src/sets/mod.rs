//! Deterministic generators for the concrete set families under study:
//! polynomially decaying sequence sets, Cartesian products, self-affine
//! carpets, fractal percolation samples, and radial-stretch image grids.
//!
//! Generators are pure: identical inputs (including seeds) produce
//! bit-identical point sets, so outputs can be cached and compared byte for
//! byte.

mod carpet;
mod percolation;
mod stretch;

pub use carpet::{gen_bm_carpet, gen_bm_carpet_capped, CarpetSpec};
pub use percolation::{
    gen_percolation, gen_percolation_capped, percolation_survives, PercolationOutcome,
    PercolationSpec,
};
pub use stretch::{apply_power_map, gen_radial_stretch_grid, radial_stretch};

use crate::error::{Error, Result};
use crate::point_set::{PointSet, DEFAULT_POINT_CAP};

/// The decaying sequence set `{m^{-s} : 1 <= m <= m_max} ∪ {0}` on the line.
///
/// The limit point 0 is included explicitly; the non-doubling behaviour near
/// the origin is what makes these sets interesting. The resolution is the
/// smallest gap the truncation resolves, `m_max^{-s} - (m_max+1)^{-s}`.
pub fn gen_sequence_set(s: f64, m_max: u64) -> Result<PointSet> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::parameter(format!("seq: s must be positive, got {s}")));
    }
    if m_max < 1 {
        return Err(Error::parameter("seq: m_max must be >= 1"));
    }
    if m_max as usize >= DEFAULT_POINT_CAP {
        return Err(Error::capacity(format!(
            "seq: m_max+1 = {} points exceeds the cap {}",
            m_max + 1,
            DEFAULT_POINT_CAP
        )));
    }
    let mut points = Vec::with_capacity(m_max as usize + 1);
    points.push(vec![0.0]);
    for m in (1..=m_max).rev() {
        points.push(vec![(m as f64).powf(-s)]);
    }
    let resolution = (m_max as f64).powf(-s) - ((m_max + 1) as f64).powf(-s);
    PointSet::new(1, points, resolution, format!("seq(s={s},m_max={m_max})"))
}

/// Cartesian product of two point sets, in dimension `n_a + n_b`.
pub fn gen_product(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    gen_product_capped(a, b, DEFAULT_POINT_CAP)
}

/// Cartesian product with an explicit point cap.
pub fn gen_product_capped(a: &PointSet, b: &PointSet, cap: usize) -> Result<PointSet> {
    let count = (a.len() as u128) * (b.len() as u128);
    if count > cap as u128 {
        return Err(Error::capacity(format!(
            "product: {} x {} = {count} points exceeds the cap {cap}",
            a.len(),
            b.len()
        )));
    }
    let dim = a.ambient_dim() + b.ambient_dim();
    let mut points = Vec::with_capacity(count as usize);
    for pa in a.points() {
        for pb in b.points() {
            let mut p = Vec::with_capacity(dim);
            p.extend_from_slice(pa);
            p.extend_from_slice(pb);
            points.push(p);
        }
    }
    let resolution = a.resolution().max(b.resolution());
    PointSet::new(
        dim,
        points,
        resolution,
        format!("product[{} x {}]", a.provenance(), b.provenance()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_set_small_enumeration() {
        // s=1, m_max=4 -> {0, 1/4, 1/3, 1/2, 1}
        let ps = gen_sequence_set(1.0, 4).unwrap();
        let mut xs: Vec<f64> = ps.points().iter().map(|p| p[0]).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(xs, vec![0.0, 0.25, 1.0 / 3.0, 0.5, 1.0]);
        assert_eq!(ps.len(), 5);
    }

    #[test]
    fn sequence_set_resolution_is_tail_gap() {
        // s=2, m_max=10 -> 11 points, min gap 10^-2 - 11^-2
        let ps = gen_sequence_set(2.0, 10).unwrap();
        assert_eq!(ps.len(), 11);
        let expect = 0.01 - 1.0 / 121.0;
        assert!((ps.resolution() - expect).abs() < 1e-15);
        // smallest gap among stored points is between m = 9 and m = 10
        let stored_gap = 1.0 / 81.0 - 0.01;
        assert!((ps.min_pairwise_gap() - stored_gap).abs() < 1e-15);
    }

    #[test]
    fn sequence_set_rejects_bad_domain() {
        assert!(gen_sequence_set(0.0, 4).is_err());
        assert!(gen_sequence_set(-1.0, 4).is_err());
        assert!(gen_sequence_set(1.0, 0).is_err());
    }

    #[test]
    fn product_of_corner_pairs_is_unit_square_corners() {
        let a = PointSet::new(1, vec![vec![0.0], vec![1.0]], 0.5, "pair").unwrap();
        let sq = gen_product(&a, &a).unwrap();
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.ambient_dim(), 2);
        let mut pts = sq.points().to_vec();
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(
            pts,
            vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]
        );
    }

    #[test]
    fn product_with_singleton_embeds_factor() {
        let a = PointSet::new(1, vec![vec![7.0]], 1.0, "singleton").unwrap();
        let b = gen_sequence_set(1.0, 3).unwrap();
        let p = gen_product(&a, &b).unwrap();
        assert_eq!(p.len(), b.len());
        for (q, pb) in p.points().iter().zip(b.points()) {
            assert_eq!(q[0], 7.0);
            assert_eq!(q[1], pb[0]);
        }
    }

    #[test]
    fn product_cap_guard() {
        let a = gen_sequence_set(1.0, 1000).unwrap();
        assert!(matches!(
            gen_product_capped(&a, &a, 1000),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gen_sequence_set(1.5, 100).unwrap();
        let b = gen_sequence_set(1.5, 100).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(a.resolution(), b.resolution());
    }
}
