//! Exact matrix algebra over `R` and over `Q`.

mod field;
mod matrix;
mod rational;
mod smith;

pub use matrix::LaurentMatrix;
pub use rational::RationalMatrix;
pub use smith::{smith_normal_form, SmithForm};

pub(crate) use field::{rank as field_rank, Quotient, Rationals};

use crate::error::{Error, Result};
use crate::laurent::{canonical, cyclotomic, gcd, IrreducibleFactor, FactorKind, LaurentPoly};
use crate::Rational;

/// Orders up to which `determinantal_gcd` enumerates minors directly.
const MINOR_ORDER_LIMIT: usize = 3;

/// Canonical generator of the `k`-th determinantal ideal; zero encodes the
/// zero ideal.
pub fn determinantal_gcd(a: &LaurentMatrix, k: usize) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::one();
    }
    if k > a.rows().min(a.cols()) {
        return LaurentPoly::zero();
    }
    if k <= MINOR_ORDER_LIMIT {
        return minors_gcd(a, k);
    }
    let s = smith_normal_form(a, false);
    if s.rank < k {
        return LaurentPoly::zero();
    }
    s.invariant_factors[..k].iter().fold(LaurentPoly::one(), |acc, d| &acc * d)
}

fn minors_gcd(a: &LaurentMatrix, k: usize) -> LaurentPoly {
    // rows and columns that are entirely zero contribute only zero minors
    let mut live_rows: Vec<usize> = a.entries().map(|(i, _, _)| i).collect();
    live_rows.dedup();
    let mut live_cols: Vec<usize> = a.entries().map(|(_, j, _)| j).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let dense = a.to_dense();
    let mut acc = LaurentPoly::zero();
    for rs in combinations(&live_rows, k) {
        for cs in combinations(&live_cols, k) {
            if acc.is_one() {
                return acc;
            }
            let minor: Vec<Vec<LaurentPoly>> =
                rs.iter().map(|&i| cs.iter().map(|&j| dense[i][j].clone()).collect()).collect();
            let d = matrix::bareiss_det(minor);
            if !d.is_zero() {
                acc = if acc.is_zero() { canonical(&d) } else { gcd(&acc, &d).expect("nonzero") };
            }
        }
    }
    acc
}

pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

/// Rank over the fraction field `Q(t)`, by fraction-free elimination.
pub fn rank_over_fractions(a: &LaurentMatrix) -> usize {
    let mut m = a.to_dense();
    let rows = a.rows();
    let cols = a.cols();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| (m[i][c].span(), m[i][c].bit_size()))
        else {
            continue;
        };
        m.swap(p, r);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let mut content = LaurentPoly::zero();
            for j in c..cols {
                let v = &(&piv * &m[i][j]) - &(&f * &m[r][j]);
                if !v.is_zero() {
                    content = if content.is_zero() { canonical(&v) } else { gcd(&content, &v).expect("nonzero") };
                }
                m[i][j] = v;
            }
            if !content.is_zero() && !content.is_one() {
                for j in c..cols {
                    if !m[i][j].is_zero() {
                        m[i][j] = crate::laurent::exact_div(&m[i][j], &content).expect("content divides");
                    }
                }
            }
        }
        r += 1;
    }
    r
}

/// A point of the torus `C^*` at which to specialize `t`, up to Galois
/// conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalPoint {
    Rational(Rational),
    /// A primitive root of unity of the given order.
    RootOfUnity(u64),
    /// A root of an irreducible factor.
    RootOf(IrreducibleFactor),
}

impl EvalPoint {
    pub fn of_factor(f: &IrreducibleFactor) -> Self {
        match &f.kind {
            FactorKind::Cyclotomic(d) => EvalPoint::RootOfUnity(*d),
            FactorKind::LinearRational(r) => EvalPoint::Rational(r.clone()),
            FactorKind::Unverified => EvalPoint::RootOf(f.clone()),
        }
    }
}

/// Rank of `a` with `t` specialized to the given point, computed exactly in
/// `Q` or in `Q[t]/(f)` for the minimal polynomial `f` of the point.
pub fn evaluate_rank_at(a: &LaurentMatrix, at: &EvalPoint) -> Result<usize> {
    let modulus = match at {
        EvalPoint::Rational(x) => {
            if num_traits::Zero::is_zero(x) {
                return Err(Error::EvaluateAtZero);
            }
            let m: Vec<Vec<Rational>> = a
                .to_dense()
                .iter()
                .map(|row| row.iter().map(|p| p.eval(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            return field_rank(&Rationals, m);
        }
        EvalPoint::RootOfUnity(0) => {
            return Err(Error::InvalidArgument("root of unity of order 0".into()));
        }
        EvalPoint::RootOfUnity(d) => cyclotomic(*d),
        EvalPoint::RootOf(f) => {
            let c = canonical(&f.poly);
            if c.span() == 0 {
                return Err(Error::InvalidArgument(format!("{} has no roots", f.poly)));
            }
            if c.span() == 1 {
                let x = -c.coeff(0);
                return evaluate_rank_at(a, &EvalPoint::Rational(x));
            }
            c
        }
    };
    let q = Quotient::new(modulus);
    let m: Vec<Vec<LaurentPoly>> =
        a.to_dense().iter().map(|row| row.iter().map(|p| q.reduce(p)).collect()).collect();
    field_rank(&q, m)
}
