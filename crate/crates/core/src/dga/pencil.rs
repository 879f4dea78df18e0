use num_traits::Zero;

use crate::alexcore::subquotient;
use crate::error::{Error, Result};
use crate::laurent::{valuation, LaurentPoly};
use crate::linalg::{rank_over_fractions, LaurentMatrix, RationalMatrix};
use crate::Rational;

/// A cochain complex of free `Q[s]`-modules whose differential is
/// `C + s L` in each degree, with `C`, `L` rational matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilComplex {
    dims: Vec<usize>,
    /// `constant[k]`, `linear[k]`: degree `k` to degree `k + 1`.
    constant: Vec<RationalMatrix>,
    linear: Vec<RationalMatrix>,
}

/// The cohomology of a pencil complex over `Q[[s]]` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizedModule {
    /// Sizes `j` of the summands `Q[[s]]/(s^j)`, descending.
    pub torsion: Vec<usize>,
    pub free_rank: usize,
    /// Truncation level at which the answer was read off.
    pub level: usize,
}

impl StabilizedModule {
    pub fn is_semisimple(&self) -> bool {
        self.torsion.iter().all(|&j| j <= 1)
    }

    pub fn max_block(&self) -> usize {
        self.torsion.first().copied().unwrap_or(0)
    }

    /// The same invariants ignoring the level they were read at.
    pub fn same_module(&self, other: &Self) -> bool {
        self.torsion == other.torsion && self.free_rank == other.free_rank
    }
}

/// `Q[s]/(s^m)`-module given as a partition into cyclic summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedModule {
    /// Block sizes in `1..=level`, descending.
    pub partition: Vec<usize>,
    pub level: usize,
}

impl TruncatedModule {
    /// Blocks of size exactly `level`: free summands or long torsion.
    pub fn free_candidates(&self) -> usize {
        self.partition.iter().filter(|&&j| j == self.level).count()
    }

    /// Blocks strictly shorter than the level.
    pub fn short_blocks(&self) -> Vec<usize> {
        self.partition.iter().copied().filter(|&j| j < self.level).collect()
    }

    pub fn dimension(&self) -> usize {
        self.partition.iter().sum()
    }

    /// Reduce to a lower level by capping block sizes.
    pub fn capped(&self, level: usize) -> TruncatedModule {
        let mut partition: Vec<usize> = self.partition.iter().map(|&j| j.min(level)).collect();
        partition.sort_unstable_by(|a, b| b.cmp(a));
        TruncatedModule { partition, level }
    }
}

impl PencilComplex {
    pub fn new(dims: Vec<usize>, constant: Vec<RationalMatrix>, linear: Vec<RationalMatrix>) -> Result<Self> {
        let p = PencilComplex { dims, constant, linear };
        for k in 0..p.dims.len() {
            for (name, m) in [("constant", p.constant.get(k)), ("linear", p.linear.get(k))] {
                if let Some(m) = m {
                    if m.rows() != p.dim(k + 1) || m.cols() != p.dim(k) {
                        return Err(Error::Dimension(format!(
                            "{} part of the differential in degree {} is {}x{}, expected {}x{}",
                            name,
                            k,
                            m.rows(),
                            m.cols(),
                            p.dim(k + 1),
                            p.dim(k)
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn constant(&self, k: usize) -> RationalMatrix {
        self.constant.get(k).cloned().unwrap_or_else(|| RationalMatrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn linear(&self, k: usize) -> RationalMatrix {
        self.linear.get(k).cloned().unwrap_or_else(|| RationalMatrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    /// `(C + sL)^2 = 0` coefficientwise in `s`.
    pub fn is_square_zero(&self) -> bool {
        (0..self.dims.len()).all(|k| {
            let (c0, l0, c1, l1) = (self.constant(k), self.linear(k), self.constant(k + 1), self.linear(k + 1));
            c1.mul(&c0).is_zero() && c1.mul(&l0).add(&l1.mul(&c0)).is_zero() && l1.mul(&l0).is_zero()
        })
    }

    /// The differential over `R` with `s = t - 1`.
    pub fn laurent_map(&self, k: usize) -> LaurentMatrix {
        let (c, l) = (self.constant(k), self.linear(k));
        LaurentMatrix::from_fn(c.rows(), c.cols(), |i, j| {
            let (a, b) = (c.get(i, j), l.get(i, j));
            LaurentPoly::from_coeffs(0, vec![a - b, b.clone()])
        })
    }

    /// The `Q`-linear differential of degree `k` at truncation level `m`,
    /// on the basis `s^j e_a` indexed by `j * dim + a`.
    pub fn level_map(&self, k: usize, m: usize) -> RationalMatrix {
        let (r, c) = (self.dim(k + 1), self.dim(k));
        let (a, l) = (self.constant(k), self.linear(k));
        let mut out = RationalMatrix::zeros(r * m, c * m);
        for j in 0..m {
            for x in 0..r {
                for y in 0..c {
                    if !a.get(x, y).is_zero() {
                        out.set(j * r + x, j * c + y, a.get(x, y).clone());
                    }
                    if j + 1 < m && !l.get(x, y).is_zero() {
                        out.set((j + 1) * r + x, j * c + y, l.get(x, y).clone());
                    }
                }
            }
        }
        out
    }

    /// Jordan partition of `s` acting on the degree-`k` cohomology at
    /// truncation level `m`.
    pub fn truncated(&self, k: usize, m: usize) -> TruncatedModule {
        assert!(m >= 1, "truncation level must be positive");
        let n = self.dim(k);
        let z = self.level_map(k, m).kernel();
        let b = if k == 0 {
            RationalMatrix::zeros(n * m, 0)
        } else {
            let full = self.level_map(k - 1, m);
            full.select_cols(&full.rref().1)
        };
        let rb = b.cols();
        // r[j] = rank of s^j on H
        let mut r = vec![0usize; m + 1];
        r[0] = z.cols() - rb;
        for j in 1..m {
            if r[j - 1] == 0 {
                break;
            }
            let shifted = RationalMatrix::from_fn(n * m, z.cols(), |i, c| {
                if i >= j * n {
                    z.get(i - j * n, c).clone()
                } else {
                    Rational::zero()
                }
            });
            r[j] = shifted.hstack(&b).rank() - rb;
        }
        let at_least: Vec<usize> = (0..=m + 1).map(|j| if j == 0 || j > m { 0 } else { r[j - 1] - r[j] }).collect();
        let mut partition = Vec::new();
        for j in (1..=m).rev() {
            let exact = at_least[j] - at_least[j + 1];
            partition.extend(std::iter::repeat_n(j, exact));
        }
        TruncatedModule { partition, level: m }
    }

    /// Rank of the degree-`k` cohomology over `Q((s))`.
    pub fn free_rank(&self, k: usize) -> usize {
        let out = rank_over_fractions(&self.laurent_map(k));
        let inc = if k == 0 { 0 } else { rank_over_fractions(&self.laurent_map(k - 1)) };
        self.dim(k) - out - inc
    }

    /// Degree-`k` cohomology over `Q[[s]]`, computed from the Smith form over
    /// `R` and the `(t - 1)`-adic valuations of the invariant factors.
    pub fn localized(&self, k: usize) -> StabilizedModule {
        let out = self.laurent_map(k);
        let inc = if k == 0 { LaurentMatrix::zeros(self.dim(k), 0) } else { self.laurent_map(k - 1) };
        let raw = subquotient(&out, &inc, self.dim(k));
        let s = LaurentPoly::from_ints(&[-1, 1]);
        let mut torsion: Vec<usize> =
            raw.factors.iter().map(|f| valuation(f, &s) as usize).filter(|&v| v > 0).collect();
        torsion.sort_unstable_by(|a, b| b.cmp(a));
        StabilizedModule { torsion, free_rank: raw.free_rank, level: 0 }
    }

    /// Raise the truncation level until the short blocks agree at two
    /// consecutive levels and the count of full-length blocks equals the
    /// free rank in every degree, then split off the torsion of each degree
    /// from the top down.
    pub fn stabilize(&self, m_max: usize) -> Result<Vec<StabilizedModule>> {
        let degrees = self.dims.len();
        let free: Vec<usize> = (0..degrees).map(|k| self.free_rank(k)).collect();
        let mut prev: Option<(bool, Vec<TruncatedModule>)> = None;
        let mut last = Vec::new();
        for m in 1..=m_max {
            let parts: Vec<TruncatedModule> = (0..degrees).map(|k| self.truncated(k, m)).collect();
            let certified = parts.iter().zip(&free).all(|(p, &f)| p.free_candidates() == f);
            if let Some((true, before)) = &prev {
                if before.iter().zip(&parts).all(|(a, b)| a.short_blocks() == b.short_blocks()) {
                    return self.split(&parts, &free);
                }
            }
            prev = Some((certified, parts.clone()));
            last = parts;
        }
        let diagnostics: Vec<String> = last
            .iter()
            .zip(&free)
            .enumerate()
            .filter(|(_, (p, &f))| p.free_candidates() != f)
            .map(|(k, (p, f))| {
                format!("degree {}: {} blocks of full length but free rank {}", k, p.free_candidates(), f)
            })
            .collect();
        Err(Error::NoStabilization { m_max, diagnostics: diagnostics.join("; ") })
    }

    // At level m with all torsion shorter than m, the short blocks of degree
    // k are the torsion of degrees k and k + 1 together.
    fn split(&self, parts: &[TruncatedModule], free: &[usize]) -> Result<Vec<StabilizedModule>> {
        let mut out: Vec<StabilizedModule> = Vec::with_capacity(parts.len());
        let mut above: Vec<usize> = Vec::new();
        for k in (0..parts.len()).rev() {
            let mut rest = parts[k].short_blocks();
            for j in &above {
                let Some(pos) = rest.iter().position(|x| x == j) else {
                    return Err(Error::NoStabilization {
                        m_max: parts[k].level,
                        diagnostics: format!("degree {} does not contain the torsion of degree {}", k, k + 1),
                    });
                };
                rest.remove(pos);
            }
            out.push(StabilizedModule { torsion: rest.clone(), free_rank: free[k], level: parts[k].level });
            above = rest;
        }
        out.reverse();
        Ok(out)
    }
}
