//! Exact Alexander-module computations over `R = Q[t, t^-1]`.
//!
//! The crate computes torsion decompositions and Jordan data of Alexander
//! modules of infinite cyclic covers given as free chain complexes over `R`,
//! homology jump ideals, thickened complexes of finite commutative
//! differential graded algebras, Gysin models of quasi-projective varieties
//! with their column-filtration spectral sequence, and obstruction verdicts
//! for monodromy actions.

pub mod error;
pub mod laurent;
pub mod linalg;
pub mod alexcore;
pub mod bundles;
pub mod dga;
pub mod gysin;
pub mod io;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
