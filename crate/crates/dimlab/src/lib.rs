//! Fractal dimension laboratory: generators for sequence sets, self-affine
//! carpets, percolation samples and radial-stretch grids; empirical
//! estimators for box, intermediate, and Assouad-spectrum dimensions
//! (including an exact dyadic covering optimizer and capacitary energies);
//! closed-form dimension profiles; and the Sobolev/quasiconformal distortion
//! calculus used to certify lower bounds on quasiconformal dilatation.

pub mod distort;
pub mod error;
pub mod estimate;
pub mod formulas;
pub mod point_set;
pub mod sets;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use point_set::{BoundingBox, PointSet, DEFAULT_POINT_CAP};
