use crate::laurent::{divides, divmod, exact_div, ext_gcd, normalize, unit_inverse, LaurentPoly};

use super::LaurentMatrix;

/// Smith normal form `left * A * right = diag(d_1, ..., d_rank, 0, ...)`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariant_factors: Vec<LaurentPoly>,
    pub rank: usize,
    pub left: Option<LaurentMatrix>,
    pub right: Option<LaurentMatrix>,
    /// Inverse of `right`, tracked alongside it.
    pub right_inv: Option<LaurentMatrix>,
}

impl SmithForm {
    /// Invariant factors that are not units.
    pub fn torsion_factors(&self) -> impl Iterator<Item = &LaurentPoly> + '_ {
        self.invariant_factors.iter().filter(|d| !d.is_unit())
    }

    pub fn diagonal(&self, rows: usize, cols: usize) -> LaurentMatrix {
        let mut d = LaurentMatrix::zeros(rows, cols);
        for (k, f) in self.invariant_factors.iter().enumerate() {
            d.set(k, k, f.clone());
        }
        d
    }
}

type Dense = Vec<Vec<LaurentPoly>>;

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
        .collect()
}

fn to_sparse(d: &Dense, rows: usize, cols: usize) -> LaurentMatrix {
    LaurentMatrix::from_fn(rows, cols, |i, j| d[i][j].clone())
}

/// Bezout data for nonzero `a`, `b`: `s*a + t*b = g` with `g` canonical,
/// together with the cofactors `a/g` and `b/g`.
struct Bezout {
    s: LaurentPoly,
    t: LaurentPoly,
    a_g: LaurentPoly,
    b_g: LaurentPoly,
}

fn bezout(a: &LaurentPoly, b: &LaurentPoly) -> Bezout {
    let (ua, ca) = normalize(a).expect("nonzero");
    let (ub, cb) = normalize(b).expect("nonzero");
    let (g, s, t) = ext_gcd(&ca, &cb);
    Bezout {
        s: &s * &unit_inverse(&ua).expect("unit part"),
        t: &t * &unit_inverse(&ub).expect("unit part"),
        a_g: exact_div(a, &g).expect("gcd divides"),
        b_g: exact_div(b, &g).expect("gcd divides"),
    }
}

/// row_i -= q * row_k
fn rows_axpy(m: &mut Dense, i: usize, k: usize, q: &LaurentPoly) {
    for j in 0..m[k].len() {
        if !m[k][j].is_zero() {
            let v = &m[i][j] - &(q * &m[k][j]);
            m[i][j] = v;
        }
    }
}

/// col_j -= q * col_k
fn cols_axpy(m: &mut Dense, j: usize, k: usize, q: &LaurentPoly) {
    for row in m.iter_mut() {
        if !row[k].is_zero() {
            let v = &row[j] - &(q * &row[k]);
            row[j] = v;
        }
    }
}

fn mix(c: &[LaurentPoly; 4], x: &LaurentPoly, y: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    (&(&c[0] * x) + &(&c[1] * y), &(&c[2] * x) + &(&c[3] * y))
}

/// (row_r, row_i) <- (c0 row_r + c1 row_i, c2 row_r + c3 row_i)
fn rows_combine(m: &mut Dense, r: usize, i: usize, c: &[LaurentPoly; 4]) {
    for j in 0..m[r].len() {
        if m[r][j].is_zero() && m[i][j].is_zero() {
            continue;
        }
        let (x, y) = mix(c, &m[r][j], &m[i][j]);
        m[r][j] = x;
        m[i][j] = y;
    }
}

/// (col_r, col_i) <- (c0 col_r + c1 col_i, c2 col_r + c3 col_i)
fn cols_combine(m: &mut Dense, r: usize, i: usize, c: &[LaurentPoly; 4]) {
    for row in m.iter_mut() {
        if row[r].is_zero() && row[i].is_zero() {
            continue;
        }
        let (x, y) = mix(c, &row[r], &row[i]);
        row[r] = x;
        row[i] = y;
    }
}

/// Row vectors of a transform, with the matching updates on the inverse of
/// the transposed transform (`None` when no inverse is tracked).
struct Vectors<'a> {
    t: &'a mut Dense,
    inv: Option<&'a mut Dense>,
}

impl Vectors<'_> {
    fn swap(&mut self, i: usize, k: usize) {
        self.t.swap(i, k);
        if let Some(inv) = self.inv.as_mut() {
            inv.swap(i, k);
        }
    }

    /// v_i -= q * v_k
    fn axpy(&mut self, i: usize, k: usize, q: &LaurentPoly) {
        rows_axpy(self.t, i, k, q);
        if let Some(inv) = self.inv.as_mut() {
            rows_axpy(inv, k, i, &-q);
        }
    }

    fn combine(&mut self, r: usize, i: usize, c: &[LaurentPoly; 4]) {
        rows_combine(self.t, r, i, c);
        if let Some(inv) = self.inv.as_mut() {
            let c_inv = [c[3].clone(), -&c[2], -&c[1], c[0].clone()];
            rows_combine(inv, r, i, &c_inv);
        }
    }

    /// Vectors `rank..` span a kernel, so they may be recombined freely and
    /// added to the others. Bring them to Hermite form and reduce the first
    /// `rank` vectors modulo them.
    fn reduce_modulo_kernel(&mut self, rank: usize) {
        let n = self.t.len();
        let width = self.t.first().map_or(0, |v| v.len());
        let key = |x: &LaurentPoly| (x.span(), x.bit_size());
        let mut pivots = Vec::new();
        let mut r = rank;
        for c in 0..width {
            if r == n {
                break;
            }
            let Some(p) = (r..n).filter(|&i| !self.t[i][c].is_zero()).min_by_key(|&i| key(&self.t[i][c])) else {
                continue;
            };
            self.swap(r, p);
            for i in r + 1..n {
                if self.t[i][c].is_zero() {
                    continue;
                }
                if let Some(q) = exact_div(&self.t[i][c], &self.t[r][c]) {
                    self.axpy(i, r, &q);
                } else {
                    let b = bezout(&self.t[r][c], &self.t[i][c]);
                    self.combine(r, i, &[b.s, b.t, -&b.b_g, b.a_g]);
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        for i in 0..n {
            for &(k, c) in &pivots {
                if k == i || self.t[i][c].is_zero() {
                    continue;
                }
                let (q, _) = divmod(&self.t[i][c], &self.t[k][c]).expect("pivot is nonzero");
                if !q.is_zero() && (i < rank || k > i) {
                    self.axpy(i, k, &q);
                }
            }
        }
    }
}

fn transpose(m: &Dense, rows: usize, cols: usize) -> Dense {
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

struct Work {
    a: Dense,
    rows: usize,
    cols: usize,
    left: Option<Dense>,
    right: Option<Dense>,
    right_inv: Option<Dense>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(l) = self.left.as_mut() {
            l.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if let Some(r) = self.right.as_mut() {
            for row in r.iter_mut() {
                row.swap(j, k);
            }
        }
        if let Some(ri) = self.right_inv.as_mut() {
            ri.swap(j, k);
        }
    }

    fn row_axpy(&mut self, i: usize, k: usize, q: &LaurentPoly) {
        rows_axpy(&mut self.a, i, k, q);
        if let Some(l) = self.left.as_mut() {
            rows_axpy(l, i, k, q);
        }
    }

    /// col_j -= q * col_k; the inverse picks up row_k += q * row_j.
    fn col_axpy(&mut self, j: usize, k: usize, q: &LaurentPoly) {
        cols_axpy(&mut self.a, j, k, q);
        if let Some(r) = self.right.as_mut() {
            cols_axpy(r, j, k, q);
        }
        if let Some(ri) = self.right_inv.as_mut() {
            rows_axpy(ri, k, j, &-q);
        }
    }

    /// Determinant-one combination of two rows.
    fn row_combine(&mut self, r: usize, i: usize, c: &[LaurentPoly; 4]) {
        rows_combine(&mut self.a, r, i, c);
        if let Some(l) = self.left.as_mut() {
            rows_combine(l, r, i, c);
        }
    }

    /// Determinant-one combination of two columns.
    fn col_combine(&mut self, r: usize, i: usize, c: &[LaurentPoly; 4]) {
        cols_combine(&mut self.a, r, i, c);
        if let Some(rt) = self.right.as_mut() {
            cols_combine(rt, r, i, c);
        }
        if let Some(ri) = self.right_inv.as_mut() {
            let inv = [c[3].clone(), -&c[2], -&c[1], c[0].clone()];
            rows_combine(ri, r, i, &inv);
        }
    }

    fn scale_row(&mut self, k: usize, u: &LaurentPoly) {
        for x in self.a[k].iter_mut() {
            *x = &*x * u;
        }
        if let Some(l) = self.left.as_mut() {
            for x in l[k].iter_mut() {
                *x = &*x * u;
            }
        }
    }

    fn key(&self, i: usize, j: usize) -> (usize, u64, usize, usize) {
        let p = &self.a[i][j];
        (p.span(), p.bit_size(), i, j)
    }

    /// Zero out `a[i][c]` against the pivot `a[r][c]`.
    fn eliminate_in_col(&mut self, r: usize, i: usize, c: usize) {
        if let Some(q) = exact_div(&self.a[i][c], &self.a[r][c]) {
            self.row_axpy(i, r, &q);
        } else {
            let b = bezout(&self.a[r][c], &self.a[i][c]);
            self.row_combine(r, i, &[b.s, b.t, -&b.b_g, b.a_g]);
        }
    }

    /// Zero out `a[r][j]` against the pivot `a[r][k]`.
    fn eliminate_in_row(&mut self, r: usize, k: usize, j: usize) {
        if let Some(q) = exact_div(&self.a[r][j], &self.a[r][k]) {
            self.col_axpy(j, k, &q);
        } else {
            let b = bezout(&self.a[r][k], &self.a[r][j]);
            self.col_combine(k, j, &[b.s, b.t, -&b.b_g, b.a_g]);
        }
    }

    /// Row Hermite pass: echelon form with entries above each pivot
    /// reduced modulo it.
    fn row_pass(&mut self) {
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).filter(|&i| !self.a[i][c].is_zero()).min_by_key(|&i| self.key(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in r + 1..self.rows {
                if !self.a[i][c].is_zero() {
                    self.eliminate_in_col(r, i, c);
                }
            }
            for i in 0..r {
                if !self.a[i][c].is_zero() {
                    let (q, _) = divmod(&self.a[i][c], &self.a[r][c]).expect("pivot is nonzero");
                    if !q.is_zero() {
                        self.row_axpy(i, r, &q);
                    }
                }
            }
            r += 1;
        }
    }

    /// The same pass on columns.
    fn col_pass(&mut self) {
        let mut k = 0;
        for r in 0..self.rows {
            if k == self.cols {
                break;
            }
            let Some(p) = (k..self.cols).filter(|&j| !self.a[r][j].is_zero()).min_by_key(|&j| self.key(r, j)) else {
                continue;
            };
            self.swap_cols(k, p);
            for j in k + 1..self.cols {
                if !self.a[r][j].is_zero() {
                    self.eliminate_in_row(r, k, j);
                }
            }
            for j in 0..k {
                if !self.a[r][j].is_zero() {
                    let (q, _) = divmod(&self.a[r][j], &self.a[r][k]).expect("pivot is nonzero");
                    if !q.is_zero() {
                        self.col_axpy(j, k, &q);
                    }
                }
            }
            k += 1;
        }
    }

    /// At most one nonzero entry in every row and every column.
    fn is_monomial(&self) -> bool {
        let rows_ok = self.a.iter().all(|row| row.iter().filter(|x| !x.is_zero()).count() <= 1);
        rows_ok && (0..self.cols).all(|j| self.a.iter().filter(|row| !row[j].is_zero()).count() <= 1)
    }

    /// Move the nonzero entries of a monomial matrix onto the diagonal.
    fn gather_diagonal(&mut self) -> usize {
        let mut k = 0;
        while k < self.rows.min(self.cols) {
            let found = (k..self.rows).find_map(|i| (k..self.cols).find(|&j| !self.a[i][j].is_zero()).map(|j| (i, j)));
            let Some((i, j)) = found else { break };
            self.swap_rows(k, i);
            self.swap_cols(k, j);
            k += 1;
        }
        k
    }

    /// Turn `diag(x, y)` at positions `i < j` into `diag(gcd, lcm)`.
    fn fix_pair(&mut self, i: usize, j: usize) {
        self.row_axpy(i, j, &-LaurentPoly::one());
        let b = bezout(&self.a[i][i], &self.a[i][j]);
        self.col_combine(i, j, &[b.s, b.t, -&b.b_g, b.a_g]);
        let q = exact_div(&self.a[j][i], &self.a[i][i]).expect("gcd divides");
        self.row_axpy(j, i, &q);
    }
}

/// Smith normal form over `R`. Transforms (and the inverse of the right
/// transform) are computed when `with_transforms` is set.
///
/// Alternates row and column Hermite passes until the matrix is monomial,
/// which keeps intermediate entries bounded by reducing modulo each pivot.
pub fn smith_normal_form(a: &LaurentMatrix, with_transforms: bool) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.to_dense(),
        rows,
        cols,
        left: with_transforms.then(|| identity(rows)),
        right: with_transforms.then(|| identity(cols)),
        right_inv: with_transforms.then(|| identity(cols)),
    };
    loop {
        w.row_pass();
        if w.is_monomial() {
            break;
        }
        w.col_pass();
        if w.is_monomial() {
            break;
        }
    }
    let rank = w.gather_diagonal();
    for i in 0..rank {
        for j in i + 1..rank {
            if !divides(&w.a[i][i], &w.a[j][j]) {
                w.fix_pair(i, j);
            }
        }
        let (unit, _) = normalize(&w.a[i][i]).expect("pivot is nonzero");
        w.scale_row(i, &unit_inverse(&unit).expect("unit part"));
    }
    if let Some(l) = w.left.as_mut() {
        Vectors { t: l, inv: None }.reduce_modulo_kernel(rank);
    }
    if let Some(r) = w.right.as_mut() {
        let mut rt = transpose(r, cols, cols);
        Vectors { t: &mut rt, inv: w.right_inv.as_mut() }.reduce_modulo_kernel(rank);
        *r = transpose(&rt, cols, cols);
    }
    let factors: Vec<LaurentPoly> = (0..rank).map(|k| w.a[k][k].clone()).collect();
    SmithForm {
        invariant_factors: factors,
        rank,
        left: w.left.as_ref().map(|l| to_sparse(l, rows, rows)),
        right: w.right.as_ref().map(|r| to_sparse(r, cols, cols)),
        right_inv: w.right_inv.as_ref().map(|r| to_sparse(r, cols, cols)),
    }
}
