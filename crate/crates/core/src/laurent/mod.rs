//! Exact arithmetic in `R = Q[t, t^-1]`.
//!
//! `R` is a principal ideal domain whose units are the monomials `c t^k`.
//! Every nonzero element factors uniquely as `unit * canonical` where the
//! canonical part is a monic ordinary polynomial with nonzero constant term;
//! the degree of the canonical part is the Euclidean function used by
//! [`divmod`].

mod factor;
mod parse;
mod poly;

pub use factor::{
    cyclotomic, euler_phi, factor, factor_family, Factorization, FactorKind, IrreducibleFactor,
    DEFAULT_CYCLOTOMIC_BOUND,
};
pub use parse::{parse_poly, parse_poly_in, parse_rational};
pub use poly::LaurentPoly;
pub(crate) use poly::rational_pow;

use crate::error::{Error, Result};

/// Split `p` into `(unit, canonical)` with `p = unit * canonical`.
pub fn normalize(p: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroCanonical);
    }
    let lc = p.leading_coeff();
    let unit = LaurentPoly::monomial(lc.clone(), p.low_exp());
    let canonical = p.shift(-p.low_exp()).scale(&lc.recip());
    Ok((unit, canonical))
}

/// Canonical generator of the principal ideal `(p)`; zero maps to zero.
pub fn canonical(p: &LaurentPoly) -> LaurentPoly {
    match normalize(p) {
        Ok((_, c)) => c,
        Err(_) => LaurentPoly::zero(),
    }
}

/// Inverse of a unit `c t^k`.
pub fn unit_inverse(u: &LaurentPoly) -> Option<LaurentPoly> {
    if !u.is_unit() {
        return None;
    }
    let c = u.leading_coeff();
    Some(LaurentPoly::monomial(c.recip(), -u.low_exp()))
}

/// Euclidean division: `a = q b + r` with `r = 0` or
/// `deg canonical(r) < deg canonical(b)`.
pub fn divmod(a: &LaurentPoly, b: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if a.is_zero() {
        return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
    }
    let (va, vb) = (a.low_exp(), b.low_exp());
    let a0 = a.shift(-va);
    let b0 = b.shift(-vb);
    let (q, r) = a0.ordinary_divmod(&b0);
    Ok((q.shift(va - vb), r.shift(va)))
}

/// Exact quotient `a / b` when `b` divides `a` in `R`.
pub fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (q, r) = divmod(a, b).ok()?;
    r.is_zero().then_some(q)
}

pub fn divides(b: &LaurentPoly, a: &LaurentPoly) -> bool {
    if b.is_zero() {
        return a.is_zero();
    }
    exact_div(a, b).is_some()
}

/// Canonical generator of the ideal `(a, b)`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let mut x = canonical(a);
    let mut y = canonical(b);
    while !y.is_zero() {
        let r = x.ordinary_rem(&y);
        x = y;
        y = canonical(&r);
    }
    Ok(x.monic())
}

/// Extended Euclid on ordinary polynomials: returns `(g, u, v)` with
/// `u a + v b = g`, `g` monic.
pub(crate) fn ext_gcd(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(), LaurentPoly::zero());
    let (mut t0, mut t1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.ordinary_divmod(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = r0.leading_coeff().recip();
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

/// Yun's square-free decomposition of the canonical part of `p`.
///
/// Returns `(factor, multiplicity)` pairs in increasing multiplicity; the
/// factors are canonical, square-free and pairwise coprime. Units give `[]`.
pub fn squarefree_decompose(p: &LaurentPoly) -> Result<Vec<(LaurentPoly, u32)>> {
    let f = normalize(p)?.1;
    let mut out = Vec::new();
    if f.span() == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    let g = gcd(&f, &df)?;
    let mut c = f.ordinary_divmod(&g).0;
    let mut d = &df.ordinary_divmod(&g).0 - &c.derivative();
    let mut i = 1u32;
    while c.span() > 0 {
        let a = gcd(&c, &d)?;
        if a.span() > 0 {
            out.push((a.clone(), i));
        }
        c = c.ordinary_divmod(&a).0;
        d = &d.ordinary_divmod(&a).0 - &c.derivative();
        i += 1;
    }
    Ok(out)
}

/// Exponent of `p` in `a` (`a != 0`, `p` a non-unit).
pub fn valuation(a: &LaurentPoly, p: &LaurentPoly) -> u32 {
    debug_assert!(!a.is_zero() && !p.is_unit());
    let mut v = 0;
    let mut cur = a.clone();
    while let Some(q) = exact_div(&cur, p) {
        cur = q;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let (u, c) = normalize(&p("2*t^-1 - 2")).unwrap();
        assert_eq!(u, p("-2*t^-1"));
        assert_eq!(c, p("t - 1"));

        let (u, c) = normalize(&p("t")).unwrap();
        assert_eq!(u, p("t"));
        assert!(c.is_one());

        let input = p("3*t^2 + 3*t");
        let (u, c) = normalize(&input).unwrap();
        assert_eq!(u, p("3*t"));
        assert_eq!(c, p("t + 1"));
        assert_eq!(&u * &c, input);

        assert_eq!(normalize(&LaurentPoly::zero()), Err(Error::ZeroCanonical));
        assert_eq!(Error::ZeroCanonical.to_string(), "zero has no canonical unit part");
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = divmod(&p("t^2 - 1"), &p("t - 1")).unwrap();
        assert_eq!(q, p("t + 1"));
        assert!(r.is_zero());

        let (q, r) = divmod(&p("t - 1"), &p("t^2 - 1")).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p("t - 1"));

        let a = p("t^3 + t^-1");
        let b = p("t - 2");
        let (q, r) = divmod(&a, &b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.is_zero() || canonical(&r).span() < 1);

        assert_eq!(divmod(&a, &LaurentPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("t^2 - 1"), &p("t - 1")).unwrap(), p("t - 1"));
        let a = p("t - 1").pow(2);
        let b = &p("t - 1") * &p("t + 1");
        assert_eq!(gcd(&a, &b).unwrap(), p("t - 1"));
        assert_eq!(gcd(&p("2*t^3 - 2*t^2"), &LaurentPoly::zero()).unwrap(), p("t - 1"));
        assert_eq!(gcd(&LaurentPoly::zero(), &LaurentPoly::zero()), Err(Error::GcdOfZeros));
        // constructed: p*g, q*g with gcd(p, q) = 1
        let g = p("t^2 + 1/2*t - 3");
        let x = &p("t + 5") * &g;
        let y = &p("7*t^-2 - t") * &g;
        assert_eq!(gcd(&x, &y).unwrap(), g);
    }

    #[test]
    fn squarefree_examples() {
        let f = &p("t - 1").pow(2) * &p("t + 1");
        assert_eq!(squarefree_decompose(&f).unwrap(), vec![(p("t + 1"), 1), (p("t - 1"), 2)]);
        assert!(squarefree_decompose(&p("t^5")).unwrap().is_empty());
        let f = &cyclotomic(3).pow(3) * &cyclotomic(4);
        assert_eq!(
            squarefree_decompose(&f).unwrap(),
            vec![(cyclotomic(4), 1), (cyclotomic(3), 3)]
        );
    }

    #[test]
    fn involution_of_symmetric_factors() {
        for f in [p("t - 1"), cyclotomic(3), cyclotomic(12)] {
            let inv = f.involution();
            assert_eq!(canonical(&inv), f);
        }
        assert_eq!(canonical(&p("t - 2").involution()), p("t - 1/2"));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, proptest::collection::vec(-6i64..6, 1..5)).prop_map(|(low, cs)| {
            LaurentPoly::from_coeffs(low, cs.into_iter().map(Rational::from_integer_i64).collect())
        })
    }

    trait FromI64 {
        fn from_integer_i64(v: i64) -> Self;
    }
    impl FromI64 for Rational {
        fn from_integer_i64(v: i64) -> Self {
            Rational::from_integer(v.into())
        }
    }

    proptest! {
        #[test]
        fn divmod_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = divmod(&a, &b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.span() < b.span());
        }

        #[test]
        fn gcd_unit_invariant_and_commutative(a in arb_poly(), b in arb_poly(), k in -3i64..3, c in 1i64..5) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = gcd(&a, &b).unwrap();
            prop_assert_eq!(&g, &gcd(&b, &a).unwrap());
            let u = LaurentPoly::monomial(Rational::from_integer_i64(-c), k);
            prop_assert_eq!(&g, &gcd(&(&u * &a), &b).unwrap());
            if !a.is_zero() { prop_assert!(divides(&g, &a)); }
            if !b.is_zero() { prop_assert!(divides(&g, &b)); }
        }

        #[test]
        fn gcd_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let l = gcd(&gcd(&a, &b).unwrap(), &c).unwrap();
            let r = gcd(&a, &gcd(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn squarefree_reassembles(a in arb_poly(), b in arb_poly()) {
            let f = &(&a * &a) * &b;
            prop_assume!(!f.is_zero());
            let parts = squarefree_decompose(&f).unwrap();
            let mut prod = LaurentPoly::one();
            for (g, m) in &parts {
                prod = &prod * &g.pow(*m);
            }
            prop_assert_eq!(prod, normalize(&f).unwrap().1);
        }
    }
}
