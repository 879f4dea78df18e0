use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::Rational;

/// A finite-dimensional commutative differential graded algebra given by a
/// graded basis, structure constants and differential matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaPresentation {
    labels: Vec<Vec<String>>,
    offsets: Vec<usize>,
    /// Product of two basis elements (global indices) as sparse coordinates
    /// in the degree of the product. Missing pairs multiply to zero.
    products: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    /// `differential[k]: A^k -> A^{k+1}`, a `dim(k+1) x dim(k)` matrix.
    differential: Vec<RationalMatrix>,
}

/// Result of [`validate_cdga`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CdgaValidation {
    Ok,
    Violation { axiom: &'static str, detail: String },
}

impl CdgaValidation {
    pub fn is_ok(&self) -> bool {
        matches!(self, CdgaValidation::Ok)
    }
}

impl fmt::Display for CdgaValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CdgaValidation::Ok => f.write_str("ok"),
            CdgaValidation::Violation { axiom, detail } => write!(f, "{} violated: {}", axiom, detail),
        }
    }
}

pub type ProductEntry = (String, String, Vec<(String, Rational)>);

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl CdgaPresentation {
    /// Assemble a presentation. The first basis element of degree 0 is the
    /// unit; products with it are filled in when absent, and a product given
    /// for only one order is extended by graded commutativity.
    /// `differential[k]` must be `dim(k+1) x dim(k)`; missing trailing
    /// matrices are zero.
    pub fn new(labels: Vec<Vec<String>>, products: Vec<ProductEntry>, differential: Vec<RationalMatrix>) -> Result<Self> {
        if labels.first().is_none_or(|l| l.is_empty()) {
            return Err(Error::InvalidAlgebra("degree 0 must contain the unit".into()));
        }
        let mut offsets = Vec::with_capacity(labels.len() + 1);
        let mut total = 0;
        let mut index: HashMap<&str, usize> = HashMap::new();
        for ls in &labels {
            offsets.push(total);
            for l in ls {
                if index.insert(l.as_str(), total).is_some() {
                    return Err(Error::InvalidAlgebra(format!("duplicate basis label '{}'", l)));
                }
                total += 1;
            }
        }
        offsets.push(total);
        let lookup = |l: &str| {
            index.get(l).copied().ok_or_else(|| Error::InvalidAlgebra(format!("unknown basis label '{}'", l)))
        };
        let mut a = CdgaPresentation { labels: labels.clone(), offsets, products: BTreeMap::new(), differential: Vec::new() };
        for (x, y, combo) in &products {
            let (gx, gy) = (lookup(x)?, lookup(y)?);
            let deg = a.degree_of(gx) + a.degree_of(gy);
            let mut coords: BTreeMap<usize, Rational> = BTreeMap::new();
            for (l, c) in combo {
                let g = lookup(l)?;
                if a.degree_of(g) != deg {
                    return Err(Error::InvalidAlgebra(format!(
                        "product {}*{} has degree {} but '{}' has degree {}",
                        x,
                        y,
                        deg,
                        l,
                        a.degree_of(g)
                    )));
                }
                *coords.entry(g - a.offsets[deg]).or_insert_with(Rational::zero) += c;
            }
            if a.products.contains_key(&(gx, gy)) {
                return Err(Error::InvalidAlgebra(format!("product {}*{} given twice", x, y)));
            }
            a.products.insert((gx, gy), coords.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        let unit = 0;
        for g in 0..total {
            let k = a.degree_of(g);
            let own = vec![(g - a.offsets[k], Rational::one())];
            a.products.entry((unit, g)).or_insert_with(|| own.clone());
            a.products.entry((g, unit)).or_insert(own);
        }
        let given: Vec<((usize, usize), Vec<(usize, Rational)>)> =
            a.products.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((x, y), v) in given {
            let s = sign(a.degree_of(x) * a.degree_of(y) % 2 == 1);
            a.products
                .entry((y, x))
                .or_insert_with(|| v.iter().map(|(i, c)| (*i, c * &s)).collect());
        }
        let top = labels.len() - 1;
        for k in 0..=top {
            let (rows, cols) = (a.dim(k + 1), a.dim(k));
            let m = differential.get(k).cloned().unwrap_or_else(|| RationalMatrix::zeros(rows, cols));
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::InvalidAlgebra(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    k,
                    m.rows(),
                    m.cols(),
                    rows,
                    cols
                )));
            }
            a.differential.push(m);
        }
        if differential.len() > top + 1 {
            return Err(Error::InvalidAlgebra("more differential matrices than degrees".into()));
        }
        a.products.retain(|_, v| !v.is_empty());
        Ok(a)
    }

    /// Zero-differential algebra from labels and products.
    pub fn with_zero_differential(labels: Vec<Vec<String>>, products: Vec<ProductEntry>) -> Result<Self> {
        Self::new(labels, products, Vec::new())
    }

    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, |l| l.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.len()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[self.labels.len()]
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], |l| l.as_slice())
    }

    pub fn all_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// `(degree, position)` of a label.
    pub fn find(&self, label: &str) -> Option<(usize, usize)> {
        self.labels
            .iter()
            .enumerate()
            .find_map(|(k, ls)| ls.iter().position(|l| l == label).map(|a| (k, a)))
    }

    fn degree_of(&self, g: usize) -> usize {
        (0..self.labels.len()).rev().find(|&k| self.offsets[k] <= g && self.offsets[k + 1] > g).unwrap_or(0)
    }

    fn global(&self, k: usize, a: usize) -> usize {
        self.offsets[k] + a
    }

    /// `d^k: A^k -> A^{k+1}`; zero outside the stored range.
    pub fn differential(&self, k: usize) -> RationalMatrix {
        self.differential.get(k).cloned().unwrap_or_else(|| RationalMatrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn is_zero_differential(&self) -> bool {
        self.differential.iter().all(|m| m.is_zero())
    }

    /// Product of basis elements `(p, a)` and `(q, b)` in coordinates of
    /// degree `p + q`.
    pub fn basis_product(&self, p: usize, a: usize, q: usize, b: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim(p + q)];
        if let Some(v) = self.products.get(&(self.global(p, a), self.global(q, b))) {
            for (i, c) in v {
                out[*i] = c.clone();
            }
        }
        out
    }

    /// Product of homogeneous elements of degrees `p` and `q`.
    pub fn mul(&self, p: usize, x: &[Rational], q: usize, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim(p + q)];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                if let Some(v) = self.products.get(&(self.global(p, a), self.global(q, b))) {
                    let c = xa * yb;
                    for (i, z) in v {
                        out[*i] += &c * z;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `w -> x w` from degree `k` to degree `p + k` for `x` of
    /// degree `p`.
    pub fn left_mult(&self, p: usize, x: &[Rational], k: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.dim(p + k), self.dim(k));
        for a in 0..self.dim(k) {
            let mut e = vec![Rational::zero(); self.dim(k)];
            e[a] = Rational::one();
            for (i, v) in self.mul(p, x, k, &e).into_iter().enumerate() {
                m.set(i, a, v);
            }
        }
        m
    }

    fn apply_d(&self, k: usize, x: &[Rational]) -> Vec<Rational> {
        let col = RationalMatrix::column(x.to_vec());
        self.differential(k).mul(&col).col(0)
    }

    fn basis_vec(&self, k: usize, a: usize) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); self.dim(k)];
        e[a] = Rational::one();
        e
    }

    fn describe(&self, k: usize, v: &[Rational]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { self.labels[k][i].clone() } else { format!("{}*{}", c, self.labels[k][i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Nonzero products of basis elements, by label.
    pub fn product_entries(&self) -> Vec<ProductEntry> {
        let mut out = Vec::new();
        for ((x, y), v) in &self.products {
            let (p, q) = (self.degree_of(*x), self.degree_of(*y));
            let combo = v.iter().map(|(i, c)| (self.labels[p + q][*i].clone(), c.clone())).collect();
            out.push((self.label_of(*x).to_string(), self.label_of(*y).to_string(), combo));
        }
        out
    }

    fn label_of(&self, g: usize) -> &str {
        let k = self.degree_of(g);
        &self.labels[k][g - self.offsets[k]]
    }

    /// The same graded algebra with another differential.
    pub fn with_differential(&self, differential: Vec<RationalMatrix>) -> Result<Self> {
        Self::new(self.labels.clone(), self.product_entries(), differential)
    }

    /// Graded tensor product `A (x) B`, basis labels `a|b`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let top = self.top() + other.top();
        let mut pos: BTreeMap<(usize, usize, usize, usize), (usize, usize)> = BTreeMap::new();
        let mut labels = vec![Vec::new(); top + 1];
        for (k, lk) in labels.iter_mut().enumerate() {
            for p in 0..=k.min(self.top()) {
                let q = k - p;
                if q > other.top() {
                    continue;
                }
                for a in 0..self.dim(p) {
                    for b in 0..other.dim(q) {
                        pos.insert((p, a, q, b), (k, lk.len()));
                        lk.push(format!("{}|{}", self.labels[p][a], other.labels[q][b]));
                    }
                }
            }
        }
        let mut products = Vec::new();
        for (&(p, a, q, b), &(k, i)) in &pos {
            for (&(p2, a2, q2, b2), &(k2, i2)) in &pos {
                let left = self.basis_product(p, a, p2, a2);
                let right = other.basis_product(q, b, q2, b2);
                let s = sign(q * p2 % 2 == 1);
                let mut combo = Vec::new();
                for (x, cx) in left.iter().enumerate() {
                    if cx.is_zero() {
                        continue;
                    }
                    for (y, cy) in right.iter().enumerate() {
                        if cy.is_zero() {
                            continue;
                        }
                        let (kk, j) = pos[&(p + p2, x, q + q2, y)];
                        combo.push((labels[kk][j].clone(), cx * cy * &s));
                    }
                }
                if !combo.is_empty() {
                    products.push((labels[k][i].clone(), labels[k2][i2].clone(), combo));
                }
            }
        }
        let mut differential = Vec::new();
        for k in 0..=top {
            let mut m = RationalMatrix::zeros(labels.get(k + 1).map_or(0, |l| l.len()), labels[k].len());
            for (&(p, a, q, b), &(kk, i)) in &pos {
                if kk != k {
                    continue;
                }
                // d(a (x) b) = da (x) b + (-1)^p a (x) db
                let da = self.apply_d(p, &self.basis_vec(p, a));
                for (x, c) in da.iter().enumerate() {
                    if !c.is_zero() {
                        let (_, j) = pos[&(p + 1, x, q, b)];
                        let v = m.get(j, i) + c;
                        m.set(j, i, v);
                    }
                }
                let db = other.apply_d(q, &other.basis_vec(q, b));
                let s = sign(p % 2 == 1);
                for (y, c) in db.iter().enumerate() {
                    if !c.is_zero() {
                        let (_, j) = pos[&(p, a, q + 1, y)];
                        let v = m.get(j, i) + c * &s;
                        m.set(j, i, v);
                    }
                }
            }
            differential.push(m);
        }
        Self::new(labels, products, differential)
    }
}

/// Check the unit, graded commutativity, associativity, `d^2 = 0` and the
/// Leibniz rule on basis elements; report the first violation.
pub fn validate_cdga(a: &CdgaPresentation) -> CdgaValidation {
    let top = a.top();
    let violation = |axiom, detail| CdgaValidation::Violation { axiom, detail };
    for k in 0..=top {
        for x in 0..a.dim(k) {
            let e = a.basis_vec(k, x);
            if a.basis_product(0, 0, k, x) != e || a.basis_product(k, x, 0, 0) != e {
                return violation("unit", format!("{} * {} != {}", a.labels[0][0], a.labels[k][x], a.labels[k][x]));
            }
        }
    }
    for p in 0..=top {
        for q in 0..=top - p {
            for x in 0..a.dim(p) {
                for y in 0..a.dim(q) {
                    let xy = a.basis_product(p, x, q, y);
                    let s = sign(p * q % 2 == 1);
                    let yx: Vec<Rational> = a.basis_product(q, y, p, x).iter().map(|c| c * &s).collect();
                    if xy != yx {
                        return violation(
                            "graded commutativity",
                            format!("{} * {} = {}", a.labels[p][x], a.labels[q][y], a.describe(p + q, &xy)),
                        );
                    }
                }
            }
        }
    }
    for p in 0..=top {
        for q in 0..=top - p {
            for r in 0..=top - p - q {
                for x in 0..a.dim(p) {
                    for y in 0..a.dim(q) {
                        let xy = a.basis_product(p, x, q, y);
                        for z in 0..a.dim(r) {
                            let ez = a.basis_vec(r, z);
                            let left = a.mul(p + q, &xy, r, &ez);
                            let yz = a.basis_product(q, y, r, z);
                            let right = a.mul(p, &a.basis_vec(p, x), q + r, &yz);
                            if left != right {
                                return violation(
                                    "associativity",
                                    format!("({} * {}) * {}", a.labels[p][x], a.labels[q][y], a.labels[r][z]),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    for k in 0..top.saturating_sub(1) {
        let dd = a.differential(k + 1).mul(&a.differential(k));
        if !dd.is_zero() {
            return violation("d^2 = 0", format!("d d != 0 on degree {}", k));
        }
    }
    for p in 0..=top {
        for q in 0..=top - p {
            for x in 0..a.dim(p) {
                for y in 0..a.dim(q) {
                    let ex = a.basis_vec(p, x);
                    let ey = a.basis_vec(q, y);
                    let lhs = a.apply_d(p + q, &a.mul(p, &ex, q, &ey));
                    let mut rhs = a.mul(p + 1, &a.apply_d(p, &ex), q, &ey);
                    let s = sign(p % 2 == 1);
                    for (r, v) in rhs.iter_mut().zip(a.mul(p, &ex, q + 1, &a.apply_d(q, &ey))) {
                        *r += v * &s;
                    }
                    if lhs != rhs {
                        return violation(
                            "Leibniz rule",
                            format!(
                                "d({} * {}) = {} but d({}) {} + (-1)^{} {} d({}) = {}",
                                a.labels[p][x],
                                a.labels[q][y],
                                a.describe(p + q + 1, &lhs),
                                a.labels[p][x],
                                a.labels[q][y],
                                p,
                                a.labels[p][x],
                                a.labels[q][y],
                                a.describe(p + q + 1, &rhs)
                            ),
                        );
                    }
                }
            }
        }
    }
    CdgaValidation::Ok
}

/// The exterior algebra on the given degree-one generators, with zero
/// differential.
pub fn exterior_algebra(gens: &[&str]) -> CdgaPresentation {
    let n = gens.len();
    let mut labels = vec![Vec::new(); n + 1];
    let subsets: Vec<u32> = (0..1u32 << n).collect();
    let name = |s: u32| -> String {
        if s == 0 {
            "1".into()
        } else {
            (0..n).filter(|i| s >> i & 1 == 1).map(|i| gens[i]).collect::<Vec<_>>().join("")
        }
    };
    for &s in &subsets {
        labels[s.count_ones() as usize].push(name(s));
    }
    let mut products = Vec::new();
    for &s in &subsets {
        for &u in &subsets {
            if s == 0 || u == 0 || s & u != 0 {
                continue;
            }
            // sign of merging the two sorted generator lists
            let mut inversions = 0;
            for i in 0..n {
                if s >> i & 1 == 1 {
                    inversions += (u & ((1u32 << i) - 1)).count_ones();
                }
            }
            let c = sign(inversions % 2 == 1);
            products.push((name(s), name(u), vec![(name(s | u), c)]));
        }
    }
    CdgaPresentation::with_zero_differential(labels, products).expect("exterior algebra")
}
