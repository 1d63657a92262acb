//! Closed-form dimension functions: exponent calculus for Sobolev and
//! quasiconformal distortion, dimension profiles for each generator family,
//! the carpet intermediate-dimension recursion, and general lower/upper
//! bounds between dimension notions.

mod bounds;
mod carpet_formulas;
mod distortion_calc;
mod families;
mod profile;

pub use bounds::{
    banaji_rutar_lower, doubling_lower, product_bounds, spectrum_general_bound, BoundKind,
    ProductBounds,
};
pub use carpet_formulas::{
    bm_assouad, bm_assouad_spectrum, bm_box, bm_hausdorff, bm_intermediate, bm_lower, bm_profile,
};
pub use distortion_calc::{
    holder_alpha, p_sob, phi, phi_inv, tau, ExponentTag, SobolevExponentModel,
};
pub use families::{g_set_profile, percolation_profile, seq_profile, DimensionBundle};
pub use profile::{log_theta_grid, DimensionKind, DimensionProfile, ValueTag};
