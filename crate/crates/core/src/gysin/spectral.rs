use std::collections::BTreeMap;
use std::fmt;

use crate::alexcore::{subquotient, FreeComplex};
use crate::dga::{PencilComplex, TruncatedModule};
use crate::error::Result;
use crate::laurent::{valuation, LaurentPoly};
use crate::linalg::{smith_normal_form, LaurentMatrix, RationalMatrix};

use super::input::GysinModel;

/// A finitely generated module over `Q[[s]]`: free rank plus the sizes of
/// the cyclic summands `Q[[s]]/(s^j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalModule {
    pub free_rank: usize,
    /// Descending.
    pub torsion: Vec<usize>,
}

impl LocalModule {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_semisimple(&self) -> bool {
        self.torsion.iter().all(|&j| j == 1)
    }

    /// Smallest `e` with `s^e` killing the torsion.
    pub fn exponent(&self) -> usize {
        self.torsion.first().copied().unwrap_or(0)
    }

    // localize invariant factors over R at t - 1
    pub(crate) fn from_factors(free_rank: usize, factors: &[LaurentPoly]) -> Self {
        let s = LaurentPoly::from_ints(&[-1, 1]);
        let mut torsion: Vec<usize> =
            factors.iter().map(|f| valuation(f, &s) as usize).filter(|&v| v > 0).collect();
        torsion.sort_unstable_by(|a, b| b.cmp(a));
        LocalModule { free_rank, torsion }
    }
}

impl fmt::Display for LocalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("R".to_string()),
            r => parts.push(format!("R^{}", r)),
        }
        for &j in &self.torsion {
            parts.push(if j == 1 { "R/s".to_string() } else { format!("R/s^{}", j) });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `Hom(A(eta), Q[[s]])` with the three transposed arrows. Degree `i` has
/// the dual basis of `A^i`, each element with its bidegree `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDoubleComplex {
    pub n: usize,
    pub bidegrees: Vec<Vec<(usize, usize)>>,
    /// Index `i` holds the component `A_i -> A_{i-1}`; index 0 is empty.
    gysin: Vec<RationalMatrix>,
    eta01: Vec<RationalMatrix>,
    eta10: Vec<RationalMatrix>,
}

pub fn dual_thickened(model: &GysinModel) -> DualDoubleComplex {
    let a = &model.algebra;
    let top = a.top();
    let mut gysin = vec![RationalMatrix::zeros(0, a.dim(0))];
    let mut eta01 = vec![RationalMatrix::zeros(0, a.dim(0))];
    let mut eta10 = vec![RationalMatrix::zeros(0, a.dim(0))];
    for i in 1..=top {
        gysin.push(a.differential(i - 1).transpose());
        eta01.push(a.left_mult(1, &model.eta01, i - 1).transpose());
        eta10.push(a.left_mult(1, &model.eta10, i - 1).transpose());
    }
    DualDoubleComplex { n: model.n, bidegrees: model.bidegrees.clone(), gysin, eta01, eta10 }
}

impl DualDoubleComplex {
    pub fn top(&self) -> usize {
        self.bidegrees.len().saturating_sub(1)
    }

    pub fn dim(&self, i: usize) -> usize {
        self.bidegrees.get(i).map_or(0, |b| b.len())
    }

    pub fn gysin_part(&self, i: usize) -> RationalMatrix {
        self.part(&self.gysin, i)
    }

    pub fn eta01_part(&self, i: usize) -> RationalMatrix {
        self.part(&self.eta01, i)
    }

    pub fn eta10_part(&self, i: usize) -> RationalMatrix {
        self.part(&self.eta10, i)
    }

    fn part(&self, v: &[RationalMatrix], i: usize) -> RationalMatrix {
        v.get(i).cloned().unwrap_or_else(|| RationalMatrix::zeros(if i == 0 { 0 } else { self.dim(i - 1) }, self.dim(i)))
    }

    /// Each arrow moves bidegrees as stated and the total boundary squares
    /// to zero.
    pub fn check(&self) -> std::result::Result<(), String> {
        for i in 1..=self.top() {
            for (name, m, shift) in [
                ("d", self.gysin_part(i), (-2i64, 1i64)),
                ("eta01", self.eta01_part(i), (0, -1)),
                ("eta10", self.eta10_part(i), (-1, 0)),
            ] {
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        if num_traits::Zero::is_zero(m.get(r, c)) {
                            continue;
                        }
                        let (p, q) = self.bidegrees[i][c];
                        let (p2, q2) = self.bidegrees[i - 1][r];
                        if (p2 as i64, q2 as i64) != (p as i64 + shift.0, q as i64 + shift.1) {
                            return Err(format!("arrow {} maps ({}, {}) to ({}, {})", name, p, q, p2, q2));
                        }
                    }
                }
            }
        }
        for i in 2..=self.top() {
            if !self.boundary(i - 1).mul(&self.boundary(i)).is_zero() {
                return Err(format!("total boundary squares to a nonzero map in degree {}", i));
            }
        }
        Ok(())
    }

    /// Total boundary `A_i -> A_{i-1}` over `R` with `s = t - 1`.
    pub fn boundary(&self, i: usize) -> LaurentMatrix {
        let (g, e) = (self.gysin_part(i), self.eta01_part(i).add(&self.eta10_part(i)));
        LaurentMatrix::from_fn(g.rows(), g.cols(), |r, c| {
            let (a, b) = (g.get(r, c), e.get(r, c));
            LaurentPoly::from_coeffs(0, vec![a - b, b.clone()])
        })
    }

    pub fn total_complex(&self) -> Result<FreeComplex> {
        let ranks = (0..=self.top()).map(|i| self.dim(i)).collect();
        FreeComplex::new(ranks, (1..=self.top()).map(|i| self.boundary(i)).collect())
    }

    /// `H_i` of the total complex over `Q[[s]]`.
    pub fn total_homology(&self, i: usize) -> LocalModule {
        let raw = subquotient(&self.boundary(i), &self.boundary(i + 1), self.dim(i));
        LocalModule::from_factors(raw.free_rank, &raw.factors)
    }

    /// The same complex in cochain orientation: degree `k` is `A_{top-k}`.
    pub fn as_pencil(&self) -> PencilComplex {
        let top = self.top();
        let dims = (0..=top).map(|k| self.dim(top - k)).collect();
        let constant = (0..=top).map(|k| if k < top { self.gysin_part(top - k) } else { RationalMatrix::zeros(0, self.dim(0)) }).collect();
        let linear = (0..=top)
            .map(|k| {
                if k < top {
                    self.eta01_part(top - k).add(&self.eta10_part(top - k))
                } else {
                    RationalMatrix::zeros(0, self.dim(0))
                }
            })
            .collect();
        PencilComplex::new(dims, constant, linear).expect("consistent dimensions")
    }

    /// `H_i` of the total complex over `Q[s]/(s^m)`.
    pub fn truncated_homology(&self, i: usize, m: usize) -> TruncatedModule {
        self.as_pencil().truncated(self.top() - i, m)
    }

    // indices of degree i with column index p' <= p
    fn filtered(&self, i: usize, p: i64) -> Vec<usize> {
        self.bidegrees
            .get(i)
            .map(|b| (0..b.len()).filter(|&x| (b[x].0 as i64) <= p).collect())
            .unwrap_or_default()
    }

    /// Basis of `Z^r_p = {x in F_p : D x in F_{p-r}}` in degree `i`, as
    /// columns in full coordinates.
    fn cycles(&self, i: usize, p: i64, r: i64) -> LaurentMatrix {
        let cols = self.filtered(i, p);
        let dim = self.dim(i);
        let embed = |k: &LaurentMatrix| {
            let mut out = LaurentMatrix::zeros(dim, k.cols());
            for (row, col, v) in k.entries() {
                out.set(cols[row], col, v.clone());
            }
            out
        };
        let f = self.projection(i, p, r);
        if f.rows() == 0 || cols.is_empty() {
            return embed(&LaurentMatrix::identity(cols.len()));
        }
        let s = smith_normal_form(&f, true);
        let right = s.right.expect("transforms requested");
        embed(&right.submatrix(0..cols.len(), s.rank..cols.len()))
    }

    // D restricted to F_p(i), followed by projection away from F_{p-r}(i-1)
    fn projection(&self, i: usize, p: i64, r: i64) -> LaurentMatrix {
        let cols = self.filtered(i, p);
        if r <= 0 || i == 0 {
            return LaurentMatrix::zeros(0, cols.len());
        }
        let rows: Vec<usize> =
            (0..self.dim(i - 1)).filter(|&x| (self.bidegrees[i - 1][x].0 as i64) > p - r).collect();
        let d = self.boundary(i);
        LaurentMatrix::from_fn(rows.len(), cols.len(), |a, b| d.get(rows[a], cols[b]).clone())
    }

    /// `E^r_{p,q} = Z^r_p / (Z^{r-1}_{p-1} + D Z^{r-1}_{p+r-1})`.
    pub fn page_entry(&self, r: usize, p: i64, q: i64) -> LocalModule {
        if p < 0 || q < 0 {
            return LocalModule::default();
        }
        let i = (p + q) as usize;
        let r = r as i64;
        let cols = self.filtered(i, p);
        if cols.is_empty() {
            return LocalModule::default();
        }
        let f = self.projection(i, p, r);
        let lower = self.cycles(i, p - 1, r - 1);
        let above = self.cycles(i + 1, p + r - 1, r - 1);
        let image = if above.cols() > 0 { self.boundary(i + 1).mul(&above) } else { LaurentMatrix::zeros(self.dim(i), 0) };
        let gens = lower.cols() + image.cols();
        let g = LaurentMatrix::from_fn(cols.len(), gens, |a, b| {
            if b < lower.cols() {
                lower.get(cols[a], b).clone()
            } else {
                image.get(cols[a], b - lower.cols()).clone()
            }
        });
        let raw = subquotient(&f, &g, cols.len());
        LocalModule::from_factors(raw.free_rank, &raw.factors)
    }

    /// Page `r` on the window `0 <= p <= 2n + 1`, `0 <= q <= n + 1`.
    pub fn page(&self, r: usize) -> SpectralPage {
        let mut entries = BTreeMap::new();
        for p in 0..=(2 * self.n + 1) as i64 {
            for q in 0..=(self.n + 1) as i64 {
                entries.insert((p as usize, q as usize), self.page_entry(r, p, q));
            }
        }
        SpectralPage { r: Some(r), entries }
    }

    /// The limit page, reached once `r` exceeds the filtration length.
    pub fn limit_page(&self) -> SpectralPage {
        let mut page = self.page(2 * self.n + 2);
        page.r = None;
        page
    }
}

/// Entries of one page of the column-filtration spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    /// `None` for the limit page.
    pub r: Option<usize>,
    pub entries: BTreeMap<(usize, usize), LocalModule>,
}

impl SpectralPage {
    pub fn get(&self, p: usize, q: usize) -> LocalModule {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn same_entries(&self, other: &Self) -> bool {
        self.entries == other.entries
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &LocalModule)> {
        self.entries.iter().filter(|(_, m)| !m.is_zero())
    }
}

impl fmt::Display for SpectralPage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r {
            Some(r) => write!(f, "E^{}:", r)?,
            None => write!(f, "E^inf:")?,
        }
        let mut any = false;
        for ((p, q), m) in self.nonzero() {
            write!(f, " ({},{}) {};", p, q, m)?;
            any = true;
        }
        if !any {
            write!(f, " 0")?;
        }
        Ok(())
    }
}

/// Pages `E^0` through `E^max_r`.
pub fn spectral_pages(dc: &DualDoubleComplex, max_r: usize) -> Vec<SpectralPage> {
    (0..=max_r).map(|r| dc.page(r)).collect()
}
