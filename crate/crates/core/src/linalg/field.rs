use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{ext_gcd, LaurentPoly};
use crate::Rational;

/// Arithmetic in a field, for Gaussian elimination.
pub(crate) trait FieldCtx {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Result<Self::E>;
}

pub(crate) struct Rationals;

impl FieldCtx for Rationals {
    type E = Rational;
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
}

/// `Q[t]/(f)` for a canonical `f` of positive degree. Elements are reduced
/// ordinary polynomials. It is a field when `f` is irreducible; otherwise
/// inverting a zero divisor is reported as an error.
pub(crate) struct Quotient {
    modulus: LaurentPoly,
    t_inv: LaurentPoly,
}

impl Quotient {
    pub(crate) fn new(modulus: LaurentPoly) -> Self {
        assert!(modulus.low_exp() == 0 && modulus.span() >= 1);
        // f = t g + c0, so t * (-g / c0) = 1 mod f
        let c0 = modulus.coeff(0);
        let g = (&modulus - &LaurentPoly::constant(c0.clone())).shift(-1);
        let t_inv = g.scale(&-c0.recip());
        Quotient { modulus, t_inv }
    }

    pub(crate) fn reduce(&self, p: &LaurentPoly) -> LaurentPoly {
        if p.is_zero() {
            return p.clone();
        }
        let low = p.low_exp();
        if low >= 0 {
            return p.ordinary_rem(&self.modulus);
        }
        let base = p.shift(-low).ordinary_rem(&self.modulus);
        let mut acc = base;
        for _ in 0..(-low) {
            acc = (&acc * &self.t_inv).ordinary_rem(&self.modulus);
        }
        acc
    }
}

impl FieldCtx for Quotient {
    type E = LaurentPoly;
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a - b
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        (a * b).ordinary_rem(&self.modulus)
    }
    fn inv(&self, a: &LaurentPoly) -> Result<LaurentPoly> {
        let (g, u, _) = ext_gcd(a, &self.modulus);
        if !g.is_one() {
            return Err(Error::Singular(format!(
                "{} is a zero divisor modulo {}",
                a, self.modulus
            )));
        }
        Ok(u.ordinary_rem(&self.modulus))
    }
}

/// Rank by Gaussian elimination over a field context.
pub(crate) fn rank<F: FieldCtx>(ctx: &F, mut m: Vec<Vec<F::E>>) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ctx.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(p, r);
        let inv = ctx.inv(&m[r][c])?;
        for i in r + 1..rows {
            if ctx.is_zero(&m[i][c]) {
                continue;
            }
            let f = ctx.mul(&m[i][c], &inv);
            for j in c..cols {
                if ctx.is_zero(&m[r][j]) {
                    continue;
                }
                let v = ctx.sub(&m[i][j], &ctx.mul(&f, &m[r][j]));
                m[i][j] = v;
            }
        }
        r += 1;
    }
    Ok(r)
}
