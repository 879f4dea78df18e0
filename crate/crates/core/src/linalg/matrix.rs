use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{exact_div, LaurentPoly};

use super::RationalMatrix;

/// Sparse matrix over `R`. Absent entries are zero; stored entries are
/// never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &LaurentPoly::one())
    }

    pub fn scalar(n: usize, c: &LaurentPoly) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Dense rows; the column count is taken from the first row.
    pub fn from_rows(data: Vec<Vec<LaurentPoly>>) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(data.len(), cols);
        for (i, row) in data.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    /// Build from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, LaurentPoly)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, p) in triples {
            if i >= rows || j >= cols {
                return Err(Error::Dimension(format!(
                    "entry ({}, {}) outside a {}x{} matrix",
                    i, j, rows, cols
                )));
            }
            let v = &m.get(i, j) + &p;
            m.set(i, j, v);
        }
        Ok(m)
    }

    pub fn from_rational(a: &RationalMatrix) -> Self {
        Self::from_fn(a.rows(), a.cols(), |i, j| LaurentPoly::constant(a.get(i, j).clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> LaurentPoly {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&LaurentPoly> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert!(i < self.rows && j < self.cols, "index ({}, {}) out of bounds", i, j);
        if p.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), p);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> + '_ {
        self.entries.iter().map(|(&(i, j), p)| (i, j, p))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        LaurentMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), p)| ((j, i), p.clone())).collect(),
        }
    }

    /// Apply `t -> t^-1` entrywise.
    pub fn involution(&self) -> Self {
        self.map(|p| p.involution())
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for (&(i, j), p) in &self.entries {
            m.set(i, j, f(p));
        }
        m
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map(|p| p * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &LaurentPoly)>> = vec![Vec::new(); other.rows];
        for (&(k, j), p) in &other.entries {
            by_row[k].push((j, p));
        }
        let mut acc: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                let e = acc.entry((i, j)).or_default();
                *e = &*e + &(a * b);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        LaurentMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum dimension mismatch");
        let mut m = self.clone();
        for (&(i, j), p) in &other.entries {
            let v = &m.get(i, j) + p;
            m.set(i, j, v);
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    /// `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        m.place(0, 0, a);
        m.place(a.rows, a.cols, b);
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r, c)`.
    pub fn place(&mut self, r: usize, c: usize, block: &Self) {
        for (i, j, p) in block.entries() {
            self.set(r + i, c + j, p.clone());
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (&(i, j), p) in self.entries.range((rows.start, 0)..(rows.end, 0)) {
            if cols.contains(&j) {
                m.set(i - rows.start, j - cols.start, p.clone());
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<LaurentPoly>> {
        let mut d = vec![vec![LaurentPoly::zero(); self.cols]; self.rows];
        for (&(i, j), p) in &self.entries {
            d[i][j] = p.clone();
        }
        d
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i == j)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(bareiss_det(self.to_dense()))
    }

    /// Evaluate at a nonzero rational `t`.
    pub fn eval(&self, x: &crate::Rational) -> Result<RationalMatrix> {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for (&(i, j), p) in &self.entries {
            m.set(i, j, p.eval(x)?);
        }
        Ok(m)
    }
}

pub(crate) fn bareiss_det(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if num.is_zero() {
                    num
                } else {
                    exact_div(&num, &prev).expect("Bareiss division is exact")
                };
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Default for LaurentMatrix {
    fn default() -> Self {
        Self::zeros(0, 0)
    }
}
