//! Finite commutative differential graded algebras and their thickened
//! complexes `(A (x) Q[s]/(s^m), d + s eta)`.

mod cdga;
mod examples;
mod pencil;
mod thicken;

pub use cdga::{exterior_algebra, validate_cdga, CdgaPresentation, CdgaValidation, ProductEntry};
pub use examples::{circle_algebra, heisenberg_cohomology, heisenberg_model, torus_algebra};
pub use pencil::{PencilComplex, StabilizedModule, TruncatedModule};
pub use thicken::{
    eta_independence_test, semisimple_check, semisimple_check_bounded, stabilized_module, stabilized_modules, thicken, thickened_pencil,
    truncated_cohomology, EtaIndependence, OneCocycle, SemisimpleVerdict, ThickenedComplex, DEFAULT_M_MAX,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_model_has_a_long_block() {
        let a = heisenberg_model();
        assert!(validate_cdga(&a).is_ok());
        let eta = OneCocycle::from_ints(&a, &[1, 0, 0]).unwrap();
        let v = semisimple_check(&a, &eta).unwrap();
        assert!(!v.semisimple);
        assert_eq!(v.offending_degrees, vec![2]);
        assert_eq!(v.modules[2].torsion, vec![2]);
        assert_eq!(v.modules[1].torsion, vec![1]);
        assert_eq!(v.modules[3].torsion, vec![1]);
        let pencil = thickened_pencil(&a, &eta).unwrap();
        for (k, m) in v.modules.iter().enumerate() {
            assert!(m.same_module(&pencil.localized(k)));
        }
    }

    #[test]
    fn heisenberg_cohomology_is_semisimple() {
        let h = heisenberg_cohomology();
        assert!(validate_cdga(&h).is_ok());
        let eta = OneCocycle::from_ints(&h, &[1, 0]).unwrap();
        let v = semisimple_check(&h, &eta).unwrap();
        assert!(v.semisimple);
        assert_eq!(v.modules[1].free_rank, 1);
        assert_eq!(v.modules[1].torsion, vec![1]);
        assert_eq!(v.modules[2].free_rank, 1);
    }

    #[test]
    fn cohomologous_heisenberg_cocycles() {
        // add a degree-0 direction: tensor with the acyclic algebra u -> v
        let a = heisenberg_model();
        let e1 = OneCocycle::from_ints(&a, &[1, 0, 0]).unwrap();
        let e2 = OneCocycle::from_ints(&a, &[1, 0, 0]).unwrap();
        let r = eta_independence_test(&a, &e1, &e2, None).unwrap();
        assert!(r.agree());
        assert_eq!(r.first[2].torsion, vec![2]);
    }
}
