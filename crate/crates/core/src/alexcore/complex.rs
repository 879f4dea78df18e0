use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::LaurentMatrix;

/// Bounded chain complex `C_top -> ... -> C_1 -> C_0` of free `R`-modules.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ranks: Vec<usize>,
    /// `boundaries[k]` is `d_{k+1}: C_{k+1} -> C_k`.
    boundaries: Vec<LaurentMatrix>,
    checked: OnceLock<Validation>,
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ranks == other.ranks && self.boundaries == other.boundaries
    }
}

impl Eq for FreeComplex {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Ok,
    Dimension { degree: usize, message: String },
    NonZeroComposite { degree: usize, row: usize, col: usize, value: LaurentPoly },
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validation::Ok => f.write_str("ok"),
            Validation::Dimension { degree, message } => {
                write!(f, "dimension violation at degree {}: {}", degree, message)
            }
            Validation::NonZeroComposite { degree, row, col, value } => write!(
                f,
                "d_{} d_{} != 0: entry ({}, {}) is {}",
                degree - 1,
                degree,
                row,
                col,
                value
            ),
        }
    }
}

impl FreeComplex {
    /// A validated complex.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<LaurentMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(ranks, boundaries);
        match c.validate() {
            Validation::Ok => Ok(c),
            v => Err(Error::InvalidComplex(v.to_string())),
        }
    }

    /// Store the data as given; [`FreeComplex::validate`] reports problems.
    pub fn new_unchecked(ranks: Vec<usize>, boundaries: Vec<LaurentMatrix>) -> Self {
        FreeComplex { ranks, boundaries, checked: OnceLock::new() }
    }

    /// The complex `C_0 = R^n` with nothing else.
    pub fn point_like(n: usize) -> Self {
        Self::new_unchecked(vec![n], Vec::new())
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// Highest degree with a chain group; the complex lives in `0..=top`.
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn boundaries(&self) -> &[LaurentMatrix] {
        &self.boundaries
    }

    /// `d_i: C_i -> C_{i-1}` for any `i`, zero outside the stored range.
    pub fn boundary(&self, i: usize) -> LaurentMatrix {
        if i >= 1 {
            if let Some(b) = self.boundaries.get(i - 1) {
                return b.clone();
            }
        }
        let rows = if i == 0 { 0 } else { self.rank(i - 1) };
        LaurentMatrix::zeros(rows, self.rank(i))
    }

    pub fn validate(&self) -> Validation {
        self.checked.get_or_init(|| self.compute_validation()).clone()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        match self.validate() {
            Validation::Ok => Ok(()),
            v => Err(Error::InvalidComplex(v.to_string())),
        }
    }

    fn compute_validation(&self) -> Validation {
        if self.boundaries.len() + 1 > self.ranks.len().max(1) {
            return Validation::Dimension {
                degree: self.boundaries.len(),
                message: format!(
                    "{} boundary matrices for {} chain groups",
                    self.boundaries.len(),
                    self.ranks.len()
                ),
            };
        }
        for (k, b) in self.boundaries.iter().enumerate() {
            let (src, dst) = (self.rank(k + 1), self.rank(k));
            if b.rows() != dst || b.cols() != src {
                return Validation::Dimension {
                    degree: k + 1,
                    message: format!(
                        "d_{} is {}x{} but C_{} has rank {} and C_{} has rank {}",
                        k + 1,
                        b.rows(),
                        b.cols(),
                        k + 1,
                        src,
                        k,
                        dst
                    ),
                };
            }
        }
        for k in 1..self.boundaries.len() {
            let comp = self.boundaries[k - 1].mul(&self.boundaries[k]);
            let first = comp.entries().next().map(|(i, j, p)| (i, j, p.clone()));
            if let Some((row, col, value)) = first {
                return Validation::NonZeroComposite { degree: k + 1, row, col, value };
            }
        }
        Validation::Ok
    }

    /// The complex with every boundary transposed, re-indexed as a chain
    /// complex: degree `i` of the result is `C^{top-i}`.
    pub fn transposed(&self) -> FreeComplex {
        let top = self.top();
        let ranks: Vec<usize> = (0..=top).rev().map(|i| self.rank(i)).collect();
        let boundaries = (1..=top).map(|j| self.boundary(top - j + 1).transpose()).collect();
        FreeComplex::new_unchecked(ranks, boundaries)
    }

    /// Apply `t -> t^-1` to every boundary entry.
    pub fn involution(&self) -> FreeComplex {
        FreeComplex::new_unchecked(
            self.ranks.clone(),
            self.boundaries.iter().map(|b| b.involution()).collect(),
        )
    }
}

pub fn validate(c: &FreeComplex) -> Validation {
    c.validate()
}

/// `sum (-1)^i rank C_i`.
pub fn euler_characteristic(c: &FreeComplex) -> i64 {
    c.ranks
        .iter()
        .enumerate()
        .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Circle with `phi = id`: `R --(t-1)--> R`.
pub fn circle() -> FreeComplex {
    let d1 = LaurentMatrix::from_rows(vec![vec![LaurentPoly::from_ints(&[-1, 1])]]);
    FreeComplex::new(vec![1, 1], vec![d1]).expect("valid")
}

/// Torus with `phi(a) = 1`, `phi(b) = 0`.
pub fn torus() -> FreeComplex {
    let s = LaurentPoly::from_ints(&[-1, 1]);
    let z = LaurentPoly::zero();
    let d1 = LaurentMatrix::from_rows(vec![vec![s.clone(), z.clone()]]);
    let d2 = LaurentMatrix::from_rows(vec![vec![z], vec![s]]);
    FreeComplex::new(vec![1, 2, 1], vec![d1, d2]).expect("valid")
}

/// Presentation complex of the free group on two generators with both
/// generators sent to 1.
pub fn free_group_2() -> FreeComplex {
    let s = LaurentPoly::from_ints(&[-1, 1]);
    let d1 = LaurentMatrix::from_rows(vec![vec![s.clone(), s]]);
    FreeComplex::new(vec![1, 2], vec![d1]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_validate() {
        assert!(circle().validate().is_ok());
        assert!(torus().validate().is_ok());
        let bad = FreeComplex::new_unchecked(vec![1, 1], vec![LaurentMatrix::zeros(2, 1)]);
        assert!(matches!(bad.validate(), Validation::Dimension { degree: 1, .. }));
        let one = LaurentMatrix::identity(1);
        let bad = FreeComplex::new_unchecked(vec![1, 1, 1], vec![one.clone(), one]);
        assert!(matches!(bad.validate(), Validation::NonZeroComposite { degree: 2, .. }));
        assert!(FreeComplex::new(vec![1, 1], vec![LaurentMatrix::zeros(2, 1)]).is_err());
    }

    #[test]
    fn euler() {
        assert_eq!(euler_characteristic(&circle()), 0);
        assert_eq!(euler_characteristic(&torus()), 0);
        let c = FreeComplex::new(vec![2, 1], vec![LaurentMatrix::zeros(2, 1)]).unwrap();
        assert_eq!(euler_characteristic(&c), 1);
    }

    #[test]
    fn transposed_shape() {
        let t = torus().transposed();
        assert_eq!(t.ranks(), &[1, 2, 1]);
        assert!(t.validate().is_ok());
        assert_eq!(t.boundary(1).rows(), 1);
        assert_eq!(t.boundary(1).cols(), 2);
    }
}
