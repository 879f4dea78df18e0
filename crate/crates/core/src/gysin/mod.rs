//! Gysin models of smooth quasi-projective varieties from stratum data, the
//! dual thickened double complex and its column-filtration spectral
//! sequence.

mod examples;
mod input;
mod report;
mod spectral;

pub use examples::{c_minus_two_points, c_star, punctured_torus};
pub use input::{build_model, GysinInput, GysinMap, GysinModel, Purity, Stratum};
pub use report::{
    analyze, analyze_model, bound_report, default_truncation, torsion_bound, BoundReport, BoundRow, Check,
    GysinReport,
};
pub use spectral::{dual_thickened, spectral_pages, DualDoubleComplex, LocalModule, SpectralPage};
