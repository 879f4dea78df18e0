use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{divmod, exact_div, gcd, normalize, squarefree_decompose, LaurentPoly};
use crate::error::Result;
use crate::Rational;

pub const DEFAULT_CYCLOTOMIC_BOUND: u64 = 200;

/// Rational-root search is skipped for coefficients above this size.
const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    Cyclotomic(u64),
    LinearRational(Rational),
    /// Square-free, free of cyclotomic and linear factors, but not certified
    /// irreducible.
    Unverified,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Cyclotomic(d) => write!(f, "cyclotomic({})", d),
            FactorKind::LinearRational(r) => write!(f, "linear-rational({})", r),
            FactorKind::Unverified => f.write_str("unverified"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleFactor {
    pub poly: LaurentPoly,
    pub kind: FactorKind,
}

impl IrreducibleFactor {
    pub fn cyclotomic(d: u64) -> Self {
        IrreducibleFactor { poly: cyclotomic(d), kind: FactorKind::Cyclotomic(d) }
    }

    /// `t - root`, reported as cyclotomic when `root = 1` or `root = -1`.
    pub fn linear(root: &Rational) -> Self {
        if root.is_one() {
            return Self::cyclotomic(1);
        }
        if (-root).is_one() {
            return Self::cyclotomic(2);
        }
        IrreducibleFactor { poly: LaurentPoly::linear(root), kind: FactorKind::LinearRational(root.clone()) }
    }

    /// Classify a canonical polynomial that is already known to be an
    /// irreducible factor (or an uncertified square-free leftover).
    pub fn classify(poly: &LaurentPoly) -> Self {
        let poly = super::canonical(poly);
        let deg = poly.span() as u64;
        if deg == 1 {
            return Self::linear(&-poly.coeff(0));
        }
        // phi(d) >= sqrt(d / 2), so only d <= 2 deg^2 can match
        for d in 1..=(2 * deg * deg).max(2) {
            if euler_phi(d) == deg && cyclotomic(d) == poly {
                return Self::cyclotomic(d);
            }
        }
        IrreducibleFactor { poly, kind: FactorKind::Unverified }
    }

    pub fn is_cyclotomic(&self) -> bool {
        matches!(self.kind, FactorKind::Cyclotomic(_))
    }

    pub fn degree(&self) -> usize {
        self.poly.span()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        self.poly.to_string_in(var)
    }
}

impl fmt::Display for IrreducibleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: LaurentPoly,
    pub factors: Vec<(IrreducibleFactor, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> LaurentPoly {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (f, m)| &acc * &f.poly.pow(*m))
    }

    pub fn has_unverified(&self) -> bool {
        self.factors.iter().any(|(f, _)| f.kind == FactorKind::Unverified)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn compute_cyclotomic(d: u64) -> LaurentPoly {
    assert!(d >= 1);
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        let binom = &LaurentPoly::monomial(Rational::one(), e as i64) - &LaurentPoly::one();
        match mobius(d / e) {
            1 => num = &num * &binom,
            -1 => den = &den * &binom,
            _ => {}
        }
    }
    exact_div(&num, &den).expect("cyclotomic division is exact")
}

static CYCLOTOMIC_TABLE: OnceLock<Vec<LaurentPoly>> = OnceLock::new();

/// The `d`-th cyclotomic polynomial `Phi_d(t)` (`d >= 1`).
pub fn cyclotomic(d: u64) -> LaurentPoly {
    assert!(d >= 1, "cyclotomic order must be positive");
    if d <= DEFAULT_CYCLOTOMIC_BOUND {
        let table = CYCLOTOMIC_TABLE.get_or_init(|| {
            (1..=DEFAULT_CYCLOTOMIC_BOUND).map(compute_cyclotomic).collect()
        });
        return table[(d - 1) as usize].clone();
    }
    compute_cyclotomic(d)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of a square-free polynomial with nonzero constant term.
fn rational_roots(g: &LaurentPoly) -> Vec<Rational> {
    let coeffs = g.ordinary_coeffs();
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return Vec::new();
    };
    if a0 > RATIONAL_ROOT_LIMIT || an > RATIONAL_ROOT_LIMIT || a0 == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                if g.eval(&r).map(|v| v.is_zero()).unwrap_or(false) {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

const PREFILTER_PRIME: u128 = (1 << 61) - 1;

fn mod_prime(c: &Rational) -> Option<u128> {
    let p = BigInt::from(PREFILTER_PRIME);
    let den = c.denom().mod_floor(&p).to_u128()?;
    if den == 0 {
        return None;
    }
    let num = c.numer().mod_floor(&p).to_u128()?;
    Some(num * pow_mod(den, PREFILTER_PRIME - 2) % PREFILTER_PRIME)
}

fn pow_mod(b: u128, e: u128) -> u128 {
    let (mut acc, mut b, mut e) = (1u128, b % PREFILTER_PRIME, e);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PREFILTER_PRIME;
        }
        b = b * b % PREFILTER_PRIME;
        e >>= 1;
    }
    acc
}

/// Remainder of `g` by a monic integer polynomial modulo a large prime.
/// `None` when a denominator of `g` vanishes mod the prime.
fn remainder_mod_prime(g: &[u128], monic: &[u128]) -> Vec<u128> {
    let p = PREFILTER_PRIME;
    let mut rem = g.to_vec();
    let db = monic.len() - 1;
    if rem.len() <= db {
        return rem;
    }
    for k in (0..rem.len() - db).rev() {
        let c = rem[k + db];
        if c == 0 {
            continue;
        }
        for (j, &b) in monic.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * b % p) % p;
        }
    }
    rem.truncate(db);
    rem
}

fn reduce_mod_prime(g: &LaurentPoly) -> Option<Vec<u128>> {
    g.ordinary_coeffs().iter().map(mod_prime).collect()
}

/// Split a square-free canonical polynomial into certified factors and an
/// uncertified leftover.
fn split_squarefree(g: LaurentPoly, bound: u64) -> (Vec<IrreducibleFactor>, LaurentPoly) {
    let mut g = g;
    let mut found = Vec::new();
    for d in 1..=bound {
        let deg = g.span() as u64;
        if deg == 0 {
            break;
        }
        if euler_phi(d) > deg {
            continue;
        }
        let phi = cyclotomic(d);
        // Phi_d is monic over Z, so divisibility over Q survives reduction mod p
        if let (Some(gm), Some(pm)) = (reduce_mod_prime(&g), reduce_mod_prime(&phi)) {
            if remainder_mod_prime(&gm, &pm).iter().any(|&c| c != 0) {
                continue;
            }
        }
        let (q, r) = g.ordinary_divmod(&phi);
        if r.is_zero() {
            g = q;
            found.push(IrreducibleFactor::cyclotomic(d));
        }
    }
    if g.span() >= 1 {
        for root in rational_roots(&g) {
            let lin = LaurentPoly::linear(&root);
            g = g.ordinary_divmod(&lin).0;
            found.push(IrreducibleFactor::linear(&root));
        }
    }
    if g.span() == 1 {
        let root = -g.coeff(0) / g.coeff(1);
        found.push(IrreducibleFactor::linear(&root));
        g = LaurentPoly::one();
    }
    (found, g.monic())
}

/// Partial factorization: square-free decomposition, then cyclotomic trial
/// division for orders up to `cyclotomic_bound`, then rational roots.
/// Whatever remains is reported with kind [`FactorKind::Unverified`].
pub fn factor(p: &LaurentPoly, cyclotomic_bound: u64) -> Result<Factorization> {
    let (unit, f) = normalize(p)?;
    let mut factors = Vec::new();
    for (g, m) in squarefree_decompose(&f)? {
        let (certified, rest) = split_squarefree(g, cyclotomic_bound);
        factors.extend(certified.into_iter().map(|c| (c, m)));
        if rest.span() > 0 {
            factors.push((IrreducibleFactor { poly: rest, kind: FactorKind::Unverified }, m));
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Refine a family of canonical non-units into pairwise coprime pieces.
fn coprime_basis(items: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    let mut items = items;
    'outer: loop {
        items.sort();
        items.dedup();
        for i in 0..items.len() {
            for j in (i + 1)..items.len() {
                let g = gcd(&items[i], &items[j]).expect("nonzero");
                if g.span() == 0 {
                    continue;
                }
                let a = exact_div(&items[i], &g).expect("gcd divides");
                let b = exact_div(&items[j], &g).expect("gcd divides");
                items.remove(j);
                items.remove(i);
                for x in [g, super::canonical(&a), super::canonical(&b)] {
                    if x.span() > 0 {
                        items.push(x);
                    }
                }
                continue 'outer;
            }
        }
        return items;
    }
}

/// Factor several polynomials so that uncertified leftovers are keyed
/// consistently: the unverified pieces across the whole family are refined
/// to a common pairwise-coprime basis.
pub fn factor_family(polys: &[LaurentPoly], cyclotomic_bound: u64) -> Result<Vec<Factorization>> {
    let mut facs = polys
        .iter()
        .map(|p| factor(p, cyclotomic_bound))
        .collect::<Result<Vec<_>>>()?;
    let leftovers: Vec<LaurentPoly> = facs
        .iter()
        .flat_map(|f| f.factors.iter())
        .filter(|(f, _)| f.kind == FactorKind::Unverified)
        .map(|(f, _)| f.poly.clone())
        .collect();
    if leftovers.is_empty() {
        return Ok(facs);
    }
    let basis = coprime_basis(leftovers);
    for fac in facs.iter_mut() {
        let mut rest = LaurentPoly::one();
        let mut kept = Vec::new();
        for (f, m) in fac.factors.drain(..) {
            if f.kind == FactorKind::Unverified {
                rest = &rest * &f.poly.pow(m);
            } else {
                kept.push((f, m));
            }
        }
        for b in &basis {
            let mut v = 0;
            while let Ok((q, r)) = divmod(&rest, b) {
                if !r.is_zero() {
                    break;
                }
                rest = q;
                v += 1;
            }
            if v > 0 {
                kept.push((IrreducibleFactor { poly: b.clone(), kind: FactorKind::Unverified }, v));
            }
        }
        debug_assert!(rest.is_unit());
        kept.sort();
        fac.factors = kept;
    }
    Ok(facs)
}
