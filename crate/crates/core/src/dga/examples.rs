use crate::linalg::RationalMatrix;
use crate::Rational;

use super::cdga::{exterior_algebra, CdgaPresentation};

/// `H*(S^1)`: the exterior algebra on one generator `x`.
pub fn circle_algebra() -> CdgaPresentation {
    exterior_algebra(&["x"])
}

/// `H*(T^2)`: the exterior algebra on `x`, `y`.
pub fn torus_algebra() -> CdgaPresentation {
    exterior_algebra(&["x", "y"])
}

/// Minimal model of the Heisenberg nilmanifold: `Λ(x, y, z)` with
/// `dz = xy`.
pub fn heisenberg_model() -> CdgaPresentation {
    let base = exterior_algebra(&["x", "y", "z"]);
    // degree 1 basis x, y, z; degree 2 basis xy, xz, yz
    let d1 = RationalMatrix::from_ints(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
    base.with_differential(vec![RationalMatrix::zeros(3, 1), d1]).expect("heisenberg model")
}

/// Cohomology algebra of the Heisenberg nilmanifold with zero
/// differential: `1; x, y; a = [xz], b = [yz]; c = [xyz]`.
pub fn heisenberg_cohomology() -> CdgaPresentation {
    let one = Rational::from_integer(1.into());
    let labels: Vec<Vec<String>> = [vec!["1"], vec!["x", "y"], vec!["a", "b"], vec!["c"]]
        .iter()
        .map(|d| d.iter().map(|s| s.to_string()).collect())
        .collect();
    let products = vec![
        ("x".to_string(), "b".to_string(), vec![("c".to_string(), one.clone())]),
        ("y".to_string(), "a".to_string(), vec![("c".to_string(), -one)]),
    ];
    CdgaPresentation::with_zero_differential(labels, products).expect("heisenberg cohomology")
}
