//! Mapping tori of fiber data and obstruction rules for monodromy actions.

mod fiber;
mod obstruction;

pub use fiber::{
    induced_homology_action, mapping_torus_complex, monodromy_alexander, monodromy_alexander_bounded, FiberData,
};
pub use obstruction::{obstruction_check, ClassKind, ObstructionVerdict, Reason, Rule, TargetClass};
