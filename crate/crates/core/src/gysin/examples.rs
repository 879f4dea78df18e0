use crate::linalg::RationalMatrix;
use crate::Rational;

use super::input::{GysinInput, GysinMap, Stratum};

fn labels(per_degree: &[&[&str]]) -> Vec<Vec<String>> {
    per_degree.iter().map(|d| d.iter().map(|s| s.to_string()).collect()).collect()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| Rational::from_integer(c.into())).collect()
}

fn point_classes(n_points: usize, names: &[&str], eta: &[i64]) -> GysinInput {
    let mut strata = vec![Stratum { subset: vec![], labels: labels(&[&["1"], &[], &["w"]]) }];
    let mut gysin = Vec::new();
    for (j, name) in names.iter().enumerate().take(n_points) {
        strata.push(Stratum { subset: vec![j], labels: vec![vec![format!("e{}", name)]] });
        gysin.push(GysinMap { from: vec![j], to: vec![], p: 0, matrix: RationalMatrix::from_ints(&[vec![1]]) });
    }
    GysinInput {
        n: 1,
        components: names.iter().map(|s| s.to_string()).collect(),
        strata,
        cup: Vec::new(),
        gysin,
        eta_weight1: Vec::new(),
        eta_weight2: ints(eta),
    }
}

/// `C^*` inside `P^1` with boundary `{0, inf}` and `eta = e0 - e_inf`.
pub fn c_star() -> GysinInput {
    point_classes(2, &["0", "inf"], &[1, -1])
}

/// `C - {0, 1}` inside `P^1` with boundary `{0, 1, inf}` and
/// `eta = e0 + e1 - 2 e_inf`.
pub fn c_minus_two_points() -> GysinInput {
    point_classes(3, &["0", "1", "inf"], &[1, 1, -2])
}

/// A torus minus one point, `H^1 = <a, b>` with `ab = w`, and `eta = a`.
pub fn punctured_torus() -> GysinInput {
    let one = Rational::from_integer(1.into());
    GysinInput {
        n: 1,
        components: vec!["p".into()],
        strata: vec![
            Stratum { subset: vec![], labels: labels(&[&["1"], &["a", "b"], &["w"]]) },
            Stratum { subset: vec![0], labels: labels(&[&["e"]]) },
        ],
        cup: vec![("a".into(), "b".into(), vec![("w".into(), one)])],
        gysin: vec![GysinMap { from: vec![0], to: vec![], p: 0, matrix: RationalMatrix::from_ints(&[vec![1]]) }],
        eta_weight1: ints(&[1, 0]),
        eta_weight2: ints(&[0]),
    }
}
