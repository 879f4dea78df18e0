#![allow(dead_code)]
//! Random generators and independent oracles shared by the integration tests.

use std::collections::BTreeMap;

use alexander::alexcore::{FreeComplex, ModuleDecomposition};
use alexander::bundles::FiberData;
use alexander::dga::{CdgaPresentation, OneCocycle, ProductEntry};
use alexander::laurent::{canonical, cyclotomic, gcd, IrreducibleFactor, LaurentPoly};
use alexander::linalg::{LaurentMatrix, RationalMatrix};
use alexander::Rational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn t_minus(c: i64) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, vec![q(-c), q(1)])
}

/// Random element with exponents in `low..=low + deg`.
pub fn random_poly(r: &mut StdRng, deg: usize, coeff: i64) -> LaurentPoly {
    let low = r.gen_range(-1..=0);
    let span = r.gen_range(0..=deg);
    LaurentPoly::from_coeffs(low, (0..=span).map(|_| q(r.gen_range(-coeff..=coeff))).collect())
}

/// Random matrix with entries of degree at most `deg`, coefficients bounded
/// by `coeff`, and roughly `density` of the entries nonzero.
pub fn random_matrix(r: &mut StdRng, rows: usize, cols: usize, deg: usize, coeff: i64, density: f64) -> LaurentMatrix {
    LaurentMatrix::from_fn(rows, cols, |_, _| {
        if r.gen_bool(density) {
            random_poly(r, deg, coeff)
        } else {
            LaurentPoly::zero()
        }
    })
}

/// Matrices of the SNF suite: plain random, multiples of a shared factor, or
/// with a dependent row. Entry degrees stay at most 3 and coefficients at
/// most 10.
pub fn snf_suite_matrix(r: &mut StdRng) -> LaurentMatrix {
    let rows = r.gen_range(1..=6);
    let cols = r.gen_range(1..=6);
    match r.gen_range(0..3) {
        0 => {
            let density = r.gen_range(0.3..1.0);
            random_matrix(r, rows, cols, 3, 10, density)
        }
        1 => {
            let f = [t_minus(1), t_minus(-1), t_minus(2)][r.gen_range(0..3)].clone();
            LaurentMatrix::from_fn(rows, cols, |_, _| {
                if r.gen_bool(0.7) {
                    let g = LaurentPoly::from_coeffs(0, (0..r.gen_range(1..=3)).map(|_| q(r.gen_range(-3..=3))).collect());
                    &f * &g
                } else {
                    LaurentPoly::zero()
                }
            })
        }
        _ => {
            let mut m = random_matrix(r, rows, cols, 3, 5, 0.8).to_dense();
            if rows >= 2 {
                let c = q(r.gen_range(-2..=2));
                let src = m[0].clone();
                m[rows - 1] = src.iter().map(|p| p.scale(&c)).collect();
            }
            LaurentMatrix::from_rows(m)
        }
    }
}

/// Determinant by expansion over column subsets.
pub fn det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let cols: Vec<usize> = (0..m[0].len()).collect();
    let rows: Vec<usize> = (0..n).collect();
    minors_of_rows(m, &rows, &cols).remove(&((1usize << n) - 1)).unwrap_or_else(LaurentPoly::zero)
}

/// All minors on the given rows: map from column bitmask (over `cols`) to
/// the minor with those columns.
fn minors_of_rows(m: &[Vec<LaurentPoly>], rows: &[usize], cols: &[usize]) -> BTreeMap<usize, LaurentPoly> {
    let mut dp: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    dp.insert(0, LaurentPoly::one());
    for &row in rows {
        let mut next: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (mask, val) in &dp {
            for (ci, &c) in cols.iter().enumerate() {
                if mask & (1 << ci) != 0 || m[row][c].is_zero() {
                    continue;
                }
                // sign from the number of chosen columns to the right
                let after = (mask >> (ci + 1)).count_ones();
                let term = &m[row][c] * val;
                let term = if after % 2 == 1 { term.scale(&q(-1)) } else { term };
                let e = next.entry(mask | (1 << ci)).or_insert_with(LaurentPoly::zero);
                *e = &*e + &term;
            }
        }
        dp = next;
    }
    dp
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0usize..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect()
}

/// Canonical gcd of all `k x k` minors; zero when they all vanish.
pub fn minors_gcd(a: &LaurentMatrix, k: usize) -> LaurentPoly {
    let m = a.to_dense();
    let cols: Vec<usize> = (0..a.cols()).collect();
    let mut g = LaurentPoly::zero();
    for rows in subsets(a.rows(), k) {
        for (_, minor) in minors_of_rows(&m, &rows, &cols) {
            if !minor.is_zero() {
                g = if g.is_zero() { canonical(&minor) } else { gcd(&g, &minor).unwrap() };
            }
        }
    }
    g
}

/// Unimodular matrix as a product of elementary operations, with its inverse.
pub fn random_unimodular(r: &mut StdRng, n: usize, steps: usize) -> (LaurentMatrix, LaurentMatrix) {
    let mut u = LaurentMatrix::identity(n);
    let mut inv = LaurentMatrix::identity(n);
    if n == 0 {
        return (u, inv);
    }
    for _ in 0..steps {
        if n >= 2 && r.gen_bool(0.8) {
            let i = r.gen_range(0..n);
            let mut j = r.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let p = LaurentPoly::from_coeffs(r.gen_range(-1..=0), vec![q(r.gen_range(-2..=2)), q(r.gen_range(-1..=1))]);
            let mut e = LaurentMatrix::identity(n);
            e.set(i, j, p.clone());
            let mut e_inv = LaurentMatrix::identity(n);
            e_inv.set(i, j, p.scale(&q(-1)));
            u = e.mul(&u);
            inv = inv.mul(&e_inv);
        } else {
            let i = r.gen_range(0..n);
            let c = [q(1), q(-1), q(2), qq(1, 3)][r.gen_range(0..4)].clone();
            let k = r.gen_range(-1..=1);
            let mut e = LaurentMatrix::identity(n);
            e.set(i, i, LaurentPoly::monomial(c.clone(), k));
            let mut e_inv = LaurentMatrix::identity(n);
            e_inv.set(i, i, LaurentPoly::monomial(c.recip(), -k));
            u = e.mul(&u);
            inv = inv.mul(&e_inv);
        }
    }
    (u, inv)
}

/// Torsion pool with known factorizations.
fn torsion_pool(r: &mut StdRng) -> Vec<(IrreducibleFactor, u32)> {
    let one = IrreducibleFactor::cyclotomic(1);
    match r.gen_range(0..7) {
        0 => vec![(one, 1)],
        1 => vec![(one, 2)],
        2 => vec![(IrreducibleFactor::cyclotomic(2), 1)],
        3 => vec![(IrreducibleFactor::cyclotomic(3), 1)],
        4 => vec![(IrreducibleFactor::linear(&q(2)), 1)],
        5 => vec![(one, 1), (IrreducibleFactor::cyclotomic(2), 1)],
        _ => vec![(IrreducibleFactor::cyclotomic(4), 1), (one, 2)],
    }
}

/// A random valid complex over `R` together with its homology.
pub struct KnownComplex {
    pub complex: FreeComplex,
    pub homology: Vec<ModuleDecomposition>,
}

/// Direct sum of free generators, torsion pairs `R --f--> R` and acyclic
/// pairs, conjugated by random unimodular changes of basis.
pub fn random_complex(r: &mut StdRng, top: usize, max_rank: usize) -> KnownComplex {
    let n = top + 1;
    let mut homology = vec![ModuleDecomposition::zero(); n];
    // generators per degree: (kind, pair id); pairs are (degree d+1 -> d)
    let mut gens: Vec<Vec<Option<usize>>> = vec![Vec::new(); n];
    let mut pairs: Vec<(usize, LaurentPoly)> = Vec::new();
    for d in 0..n {
        for _ in 0..r.gen_range(0..=1) {
            if gens[d].len() < max_rank {
                gens[d].push(None);
                homology[d].free_rank += 1;
            }
        }
        if d < top {
            for _ in 0..r.gen_range(0..=2) {
                if gens[d].len() >= max_rank || gens[d + 1].len() >= max_rank {
                    break;
                }
                let id = pairs.len();
                let f = if r.gen_bool(0.6) {
                    let parts = torsion_pool(r);
                    let mut f = LaurentPoly::one();
                    for (fac, e) in &parts {
                        f = &f * &fac.poly.pow(*e);
                        homology[d].add_block(fac.clone(), *e);
                    }
                    f.scale(&q(r.gen_range(1..=3))).shift(r.gen_range(-1..=1))
                } else {
                    LaurentPoly::monomial(q(r.gen_range(1..=3)), r.gen_range(-1..=1))
                };
                pairs.push((d, f));
                gens[d].push(Some(id));
                gens[d + 1].push(Some(id));
            }
        }
    }
    let ranks: Vec<usize> = gens.iter().map(|g| g.len()).collect();
    let mut boundaries = Vec::new();
    for d in 1..n {
        let mut b = LaurentMatrix::zeros(ranks[d - 1], ranks[d]);
        for (col, g) in gens[d].iter().enumerate() {
            if let Some(id) = g {
                if pairs[*id].0 == d - 1 {
                    let row = gens[d - 1].iter().position(|x| x == &Some(*id)).unwrap();
                    b.set(row, col, pairs[*id].1.clone());
                }
            }
        }
        boundaries.push(b);
    }
    let changes: Vec<(LaurentMatrix, LaurentMatrix)> = ranks.iter().map(|&k| random_unimodular(r, k, 2 * k)).collect();
    let boundaries =
        boundaries.iter().enumerate().map(|(k, b)| changes[k].0.mul(b).mul(&changes[k + 1].1)).collect();
    KnownComplex { complex: FreeComplex::new(ranks, boundaries).expect("valid by construction"), homology }
}

pub fn random_invertible(r: &mut StdRng, n: usize) -> RationalMatrix {
    loop {
        let m = RationalMatrix::from_fn(n, n, |_, _| q(r.gen_range(-2..=2)));
        if m.rank() == n {
            return m;
        }
    }
}

/// Small matrix with a chosen eigenstructure.
fn random_monodromy_block(r: &mut StdRng, n: usize) -> RationalMatrix {
    let lambdas = [q(1), q(-1), q(2), qq(1, 2), q(-3)];
    match n {
        0 => RationalMatrix::zeros(0, 0),
        1 => RationalMatrix::from_rows(vec![vec![lambdas[r.gen_range(0..5)].clone()]]),
        _ => match r.gen_range(0..5) {
            0 => {
                let l = lambdas[r.gen_range(0..5)].clone();
                RationalMatrix::from_rows(vec![vec![l.clone(), q(1)], vec![q(0), l]])
            }
            1 => RationalMatrix::from_rows(vec![
                vec![lambdas[r.gen_range(0..5)].clone(), q(0)],
                vec![q(0), lambdas[r.gen_range(0..5)].clone()],
            ]),
            2 => RationalMatrix::from_ints(&[vec![0, -1], vec![1, -1]]),
            3 => RationalMatrix::from_ints(&[vec![0, -1], vec![1, 0]]),
            _ => RationalMatrix::from_ints(&[vec![0, -1], vec![1, 1]]),
        },
    }
}

/// Random fiber complex over `Q` (at most four cells per degree) with a
/// chain automorphism, built from homology summands and contractible pairs
/// and conjugated by random changes of basis.
pub fn random_fiber(r: &mut StdRng) -> FiberData {
    let top = r.gen_range(1..=2);
    let n = top + 1;
    let h: Vec<usize> = (0..n).map(|_| r.gen_range(0..=2)).collect();
    let p: Vec<usize> = (0..n).map(|i| if i < top { r.gen_range(0..=1) } else { 0 }).collect();
    // degree i basis: [H_i, Y_i (pairs i+1 -> i), X_i (pairs i -> i-1)]
    let x = |i: usize| if i == 0 { 0 } else { p[i - 1] };
    let ranks: Vec<usize> = (0..n).map(|i| h[i] + p[i] + x(i)).collect();
    let pair_auto: Vec<RationalMatrix> = p.iter().map(|&k| random_invertible(r, k)).collect();
    let mut boundaries = Vec::new();
    for i in 1..n {
        let mut b = RationalMatrix::zeros(ranks[i - 1], ranks[i]);
        for j in 0..x(i) {
            b.set(h[i - 1] + j, h[i] + p[i] + j, q(1));
        }
        boundaries.push(b);
    }
    let mut monodromy = Vec::new();
    for i in 0..n {
        let mut m = RationalMatrix::zeros(ranks[i], ranks[i]);
        let a = random_monodromy_block(r, h[i]);
        for u in 0..h[i] {
            for v in 0..h[i] {
                m.set(u, v, a.get(u, v).clone());
            }
            for v in 0..p[i] {
                m.set(h[i] + v, u, q(r.gen_range(-1..=1)));
            }
        }
        for u in 0..p[i] {
            for v in 0..p[i] {
                m.set(h[i] + u, h[i] + v, pair_auto[i].get(u, v).clone());
            }
        }
        if i > 0 {
            let off = h[i] + p[i];
            for u in 0..x(i) {
                for v in 0..x(i) {
                    m.set(off + u, off + v, pair_auto[i - 1].get(u, v).clone());
                }
                for v in 0..h[i] {
                    m.set(v, off + u, q(r.gen_range(-1..=1)));
                }
            }
        }
        monodromy.push(m);
    }
    let s: Vec<RationalMatrix> = ranks.iter().map(|&k| random_invertible(r, k)).collect();
    let s_inv: Vec<RationalMatrix> = s.iter().map(|m| m.inverse().unwrap()).collect();
    let boundaries = boundaries.iter().enumerate().map(|(k, b)| s[k].mul(b).mul(&s_inv[k + 1])).collect();
    let monodromy = monodromy.iter().enumerate().map(|(k, m)| s[k].mul(m).mul(&s_inv[k])).collect();
    FiberData::new(ranks, boundaries, monodromy).expect("chain automorphism by construction")
}

/// Monomial `x_S w^e` in `Lambda(x_1..x_k) (x) Q[w]/(w^2)`, `|w| = 2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Monomial {
    s: u32,
    e: u32,
}

impl Monomial {
    fn degree(&self) -> usize {
        self.s.count_ones() as usize + 2 * self.e as usize
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.s & other.s == self.s && self.e <= other.e
    }

    fn times(&self, other: &Monomial) -> Option<(i64, Monomial)> {
        if self.s & other.s != 0 || self.e + other.e > 1 {
            return None;
        }
        let mut swaps = 0;
        for a in 0..32 {
            if self.s & (1 << a) != 0 {
                swaps += (other.s & ((1u32 << a) - 1)).count_ones();
            }
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial { s: self.s | other.s, e: self.e + other.e }))
    }
}

/// Random connected graded-commutative algebra with zero differential and
/// total dimension at most `max_dim`: a monomial quotient of
/// `Lambda(x_1..x_k) (x) Q[w]/(w^2)` in a random basis.
pub fn random_formal_algebra(r: &mut StdRng, max_dim: usize) -> CdgaPresentation {
    loop {
        let k = r.gen_range(1..=3u32);
        let with_w = r.gen_bool(0.5);
        let all: Vec<Monomial> = (0..1u32 << k)
            .flat_map(|s| (0..=u32::from(with_w)).map(move |e| Monomial { s, e }))
            .collect();
        let ideal_gens: Vec<Monomial> =
            all.iter().filter(|m| m.degree() >= 2 && r.gen_bool(0.25)).copied().collect();
        let basis: Vec<Monomial> = all.into_iter().filter(|m| !ideal_gens.iter().any(|g| g.divides(m))).collect();
        if basis.len() > max_dim {
            continue;
        }
        let top = basis.iter().map(|m| m.degree()).max().unwrap_or(0);
        let mut by_degree: Vec<Vec<Monomial>> = vec![Vec::new(); top + 1];
        for m in &basis {
            by_degree[m.degree()].push(*m);
        }
        let change: Vec<RationalMatrix> = by_degree
            .iter()
            .enumerate()
            .map(|(d, ms)| if d == 0 { RationalMatrix::identity(1) } else { random_invertible(r, ms.len()) })
            .collect();
        let back: Vec<RationalMatrix> = change.iter().map(|s| s.transpose().inverse().unwrap()).collect();
        let labels: Vec<Vec<String>> =
            by_degree.iter().enumerate().map(|(d, ms)| (0..ms.len()).map(|a| format!("g{}_{}", d, a)).collect()).collect();
        let mut products: Vec<ProductEntry> = Vec::new();
        for p in 1..=top {
            for qd in p..=top {
                if p + qd > top {
                    break;
                }
                for a in 0..by_degree[p].len() {
                    let b0 = if p == qd { a } else { 0 };
                    for b in b0..by_degree[qd].len() {
                        // old-basis coordinates of e'_a e'_b
                        let mut v = vec![q(0); by_degree[p + qd].len()];
                        for (i, mi) in by_degree[p].iter().enumerate() {
                            for (j, mj) in by_degree[qd].iter().enumerate() {
                                let c = change[p].get(a, i) * change[qd].get(b, j);
                                if c == q(0) {
                                    continue;
                                }
                                if let Some((sign, m)) = mi.times(mj) {
                                    if let Some(pos) = by_degree[p + qd].iter().position(|x| *x == m) {
                                        v[pos] += c * q(sign);
                                    }
                                }
                            }
                        }
                        let w = back[p + qd].mul(&RationalMatrix::column(v)).col(0);
                        let combo: Vec<(String, Rational)> = w
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| *c != q(0))
                            .map(|(i, c)| (labels[p + qd][i].clone(), c))
                            .collect();
                        if !combo.is_empty() {
                            products.push((labels[p][a].clone(), labels[qd][b].clone(), combo));
                        }
                    }
                }
            }
        }
        return CdgaPresentation::with_zero_differential(labels, products).expect("graded commutative");
    }
}

pub fn random_eta(r: &mut StdRng, a: &CdgaPresentation) -> OneCocycle {
    let coeffs: Vec<Rational> = (0..a.dim(1)).map(|_| q(r.gen_range(-3..=3))).collect();
    OneCocycle::new(a, coeffs).expect("closed")
}

/// The acyclic algebra `<1, u ; d u = v>` with `|u| = 0`, `u^2 = uv = 0`.
pub fn acyclic_unit_algebra() -> CdgaPresentation {
    let d0 = RationalMatrix::from_ints(&[vec![0, 1]]);
    CdgaPresentation::new(vec![vec!["1".into(), "u".into()], vec!["v".into()]], Vec::new(), vec![d0]).unwrap()
}

/// `A + I` with `I = <u, v>`, `d u = v`, `|u| = p`, `I^2 = 0` and positive
/// degrees of `A` acting by zero on `I`.
pub fn with_acyclic_ideal(a: &CdgaPresentation, p: usize) -> CdgaPresentation {
    let mut labels: Vec<Vec<String>> = a.all_labels().to_vec();
    while labels.len() < p + 2 {
        labels.push(Vec::new());
    }
    labels[p].push("ideal_u".into());
    labels[p + 1].push("ideal_v".into());
    let mut products = a.product_entries();
    products.retain(|(x, y, _)| x != "1" && y != "1");
    let mut differential = Vec::new();
    for k in 0..labels.len() - 1 {
        let (rows, cols) = (labels[k + 1].len(), labels[k].len());
        let mut m = RationalMatrix::zeros(rows, cols);
        let old = a.differential(k);
        for i in 0..old.rows() {
            for j in 0..old.cols() {
                m.set(i, j, old.get(i, j).clone());
            }
        }
        if k == p {
            m.set(rows - 1, cols - 1, q(1));
        }
        differential.push(m);
    }
    CdgaPresentation::new(labels, products, differential).unwrap()
}

/// Companion matrix of a monic ordinary polynomial.
pub fn companion(f: &LaurentPoly) -> RationalMatrix {
    let f = canonical(f);
    let n = f.span();
    let mut m = RationalMatrix::zeros(n, n);
    for i in 1..n {
        m.set(i, i - 1, q(1));
    }
    for i in 0..n {
        m.set(i, n - 1, -f.coeff(i as i64));
    }
    m
}

/// `f(M)` for an ordinary polynomial `f`.
pub fn poly_at_matrix(f: &LaurentPoly, m: &RationalMatrix) -> RationalMatrix {
    let n = m.rows();
    let mut acc = RationalMatrix::zeros(n, n);
    let mut power = RationalMatrix::identity(n);
    for e in 0..=f.high_exp().max(0) {
        if e >= f.low_exp() {
            acc = acc.add(&power.scale(&f.coeff(e)));
        }
        power = power.mul(m);
    }
    acc
}

/// Block sizes of the `f`-primary part of `Q^n` with `t` acting by `m`,
/// from ranks of powers of `f(m)`.
pub fn primary_blocks(f: &LaurentPoly, m: &RationalMatrix) -> Vec<u32> {
    let deg = canonical(f).span();
    let fm = poly_at_matrix(&canonical(f), m);
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = RationalMatrix::identity(n);
    loop {
        power = power.mul(&fm);
        let rk = power.rank();
        if rk == *ranks.last().unwrap() {
            break;
        }
        ranks.push(rk);
    }
    // number of blocks of size >= j is (r_{j-1} - r_j) / deg
    let at_least: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / deg).collect();
    let mut sizes = Vec::new();
    for (j, &c) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..c - next {
            sizes.push(j as u32 + 1);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

pub fn cyclotomic_factors(max: u64) -> Vec<LaurentPoly> {
    (1..=max).map(cyclotomic).collect()
}
