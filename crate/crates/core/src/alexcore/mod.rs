//! Alexander modules of free chain complexes over `R`.

mod complex;
mod decomposition;
mod homology;
mod jump;
mod restrict;

pub use complex::{circle, euler_characteristic, free_group_2, torus, validate, FreeComplex, Validation};
pub use decomposition::{JordanData, ModuleDecomposition};
pub use homology::{
    dual_cohomology, dual_cohomology_bounded, homology, homology_bounded, homology_presentation, jordan_data,
    jordan_data_bounded, twisted_cohomology, uct_verify, UctReport,
};
pub(crate) use homology::subquotient;
pub use jump::{jump_ideal, jump_ideal_reconstruct};
pub use restrict::restrict_scalars;

