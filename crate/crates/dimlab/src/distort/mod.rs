//! Distortion bounds for dimensions under Hoelder, Sobolev, and
//! quasiconformal maps, and the machinery turning them into dilatation
//! certificates.

mod bounds_ops;
mod classify;
mod sharpness;

pub use bounds_ops::{
    assouad_spectrum_qc_bounds, gv_hausdorff_bounds, holder_upper, implied_spectrum_dilatation,
    qc_interval, sobolev_upper, DistortionContext, QcInterval, SpectrumQcBounds,
};
pub use classify::{
    min_dilatation, CertificateWitness, ClassificationCertificate, MinDilatationConfig,
};
pub use sharpness::{
    extremality_transfer_check, sharpness_check_radial_stretch, sharpness_check_radial_stretch_empirical,
    EmpiricalSharpnessReport, ExtremalityReport, SharpnessReport,
};
