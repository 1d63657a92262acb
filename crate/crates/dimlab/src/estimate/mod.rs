//! Empirical dimension estimators: covering numbers and box-dimension slope
//! fits, exact optimal dyadic covering sums, intermediate-dimension critical
//! exponents, Assouad spectrum scans, and capacitary energies.

mod assouad;
mod capacity;
mod covering;
mod dyadic;
mod intermediate;

pub use assouad::{assouad_spectrum_estimate, AssouadSpectrumReport, AssouadWitness, MAX_CENTERS};
pub use capacity::{
    capacity, capacity_cover_sandwich_check, energy, kernel_matrix, kernel_phi, symmetrization_mc,
    CapacityResult, DiscreteMeasure, FwConfig, KernelParams, SandwichReport,
    SymmetrizationSample,
};
pub use covering::{box_dim_estimate, covering_number, BoxDimReport, Fit, ScaleGrid};
pub use dyadic::{intermediate_cover_cost, level_band, CoverSolver, DyadicCover};
pub use intermediate::{
    critical_exponent, intermediate_dim_estimate, IntermediateDimReport, CRITICAL_EXPONENT_TOL,
};
