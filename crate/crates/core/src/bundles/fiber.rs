use crate::alexcore::{FreeComplex, JordanData, ModuleDecomposition};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, DEFAULT_CYCLOTOMIC_BOUND};
use crate::linalg::{smith_normal_form, LaurentMatrix, RationalMatrix};

/// A finite chain complex over `Q` with a chain automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub ranks: Vec<usize>,
    /// `boundaries[k]` is `d_{k+1}: C_{k+1} -> C_k`.
    pub boundaries: Vec<RationalMatrix>,
    /// One square matrix per degree.
    pub monodromy: Vec<RationalMatrix>,
}

impl FiberData {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<RationalMatrix>, monodromy: Vec<RationalMatrix>) -> Result<Self> {
        let f = FiberData { ranks, boundaries, monodromy };
        f.validate()?;
        Ok(f)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// `d_i` for any `i`; zero outside the stored range.
    pub fn boundary(&self, i: usize) -> RationalMatrix {
        if i >= 1 {
            if let Some(b) = self.boundaries.get(i - 1) {
                return b.clone();
            }
        }
        let rows = if i == 0 { 0 } else { self.rank(i - 1) };
        RationalMatrix::zeros(rows, self.rank(i))
    }

    pub fn monodromy_at(&self, i: usize) -> RationalMatrix {
        self.monodromy.get(i).cloned().unwrap_or_else(|| RationalMatrix::identity(self.rank(i)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundaries.len() + 1 > self.ranks.len().max(1) {
            return Err(Error::Dimension(format!(
                "{} boundary matrices for {} chain groups",
                self.boundaries.len(),
                self.ranks.len()
            )));
        }
        if self.monodromy.len() != self.ranks.len() {
            return Err(Error::Dimension(format!(
                "{} monodromy matrices for {} chain groups",
                self.monodromy.len(),
                self.ranks.len()
            )));
        }
        for (k, b) in self.boundaries.iter().enumerate() {
            if b.rows() != self.rank(k) || b.cols() != self.rank(k + 1) {
                return Err(Error::Dimension(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    k + 1,
                    b.rows(),
                    b.cols(),
                    self.rank(k),
                    self.rank(k + 1)
                )));
            }
        }
        for k in 1..self.boundaries.len() {
            if !self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero() {
                return Err(Error::InvalidComplex(format!("d_{} d_{} != 0", k, k + 1)));
            }
        }
        for (i, h) in self.monodromy.iter().enumerate() {
            if h.rows() != self.rank(i) || h.cols() != self.rank(i) {
                return Err(Error::Dimension(format!(
                    "monodromy in degree {} is {}x{}, expected {}x{}",
                    i,
                    h.rows(),
                    h.cols(),
                    self.rank(i),
                    self.rank(i)
                )));
            }
            if h.rank() != h.rows() {
                return Err(Error::Singular(format!("monodromy in degree {} is not invertible", i)));
            }
        }
        for i in 1..self.ranks.len() {
            let d = self.boundary(i);
            if self.monodromy[i - 1].mul(&d) != d.mul(&self.monodromy[i]) {
                return Err(Error::NonCommutingMonodromy(i));
            }
        }
        Ok(())
    }
}

/// The `R`-complex of the infinite cyclic cover of the mapping torus:
/// `X_i = C_i + C_{i-1}` with boundary `[[d_i, t - h_{i-1}], [0, -d_{i-1}]]`.
pub fn mapping_torus_complex(f: &FiberData) -> Result<FreeComplex> {
    f.validate()?;
    let top = f.ranks.len();
    let ranks: Vec<usize> = (0..=top)
        .map(|i| f.rank(i) + if i == 0 { 0 } else { f.rank(i - 1) })
        .collect();
    let t = LaurentPoly::t();
    let mut boundaries = Vec::with_capacity(top);
    for i in 1..=top {
        let (ni, nim1) = (f.rank(i), f.rank(i - 1));
        let nim2 = if i >= 2 { f.rank(i - 2) } else { 0 };
        let mut b = LaurentMatrix::zeros(nim1 + nim2, ni + nim1);
        b.place(0, 0, &LaurentMatrix::from_rational(&f.boundary(i)));
        let shift = LaurentMatrix::scalar(nim1, &t).sub(&LaurentMatrix::from_rational(&f.monodromy_at(i - 1)));
        b.place(0, ni, &shift);
        if i >= 2 {
            b.place(nim1, ni, &LaurentMatrix::from_rational(&f.boundary(i - 1)).neg());
        }
        boundaries.push(b);
    }
    FreeComplex::new(ranks, boundaries)
}

/// Matrices of the action of the monodromy on `H_i(F; Q)`, one per degree,
/// in a basis of homology classes chosen from the cycles.
pub fn induced_homology_action(f: &FiberData) -> Result<Vec<RationalMatrix>> {
    f.validate()?;
    let mut out = Vec::with_capacity(f.ranks.len());
    for i in 0..f.ranks.len() {
        let z = f.boundary(i).kernel();
        let im = f.boundary(i + 1);
        let b = im.select_cols(&im.rref().1);
        // pivots of [B | Z] beyond B pick cycles completing a basis of Z mod B
        let bz = b.hstack(&z);
        let extra: Vec<usize> =
            bz.rref().1.into_iter().filter(|&c| c >= b.cols()).map(|c| c - b.cols()).collect();
        let w = z.select_cols(&extra);
        let basis = b.hstack(&w);
        let image = f.monodromy_at(i).mul(&w);
        let coords = basis.solve(&image).expect("monodromy preserves cycles");
        let rows: Vec<usize> = (b.cols()..basis.cols()).collect();
        out.push(coords.select_rows(&rows));
    }
    Ok(out)
}

/// Decomposition of `Q^n` as a `Q[t, t^-1]`-module with `t` acting by each
/// matrix: the invariant factors of `tI - h`.
pub fn monodromy_alexander(hs: &[RationalMatrix]) -> Result<JordanData> {
    monodromy_alexander_bounded(hs, DEFAULT_CYCLOTOMIC_BOUND)
}

pub fn monodromy_alexander_bounded(hs: &[RationalMatrix], bound: u64) -> Result<JordanData> {
    let mut items = Vec::with_capacity(hs.len());
    for (i, h) in hs.iter().enumerate() {
        if !h.is_square() {
            return Err(Error::Dimension(format!("monodromy in degree {} is not square", i)));
        }
        if h.rank() != h.rows() {
            return Err(Error::Singular(format!("monodromy in degree {} is not invertible", i)));
        }
        let n = h.rows();
        let m = LaurentMatrix::scalar(n, &LaurentPoly::t()).sub(&LaurentMatrix::from_rational(h));
        items.push((0, smith_normal_form(&m, false).invariant_factors));
    }
    Ok(JordanData::new(ModuleDecomposition::family_from_invariant_factors(&items, bound)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexcore::{homology, jordan_data};
    use crate::laurent::IrreducibleFactor;

    fn q(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_ints(rows)
    }

    fn heisenberg() -> FiberData {
        FiberData::new(
            vec![1, 2, 1],
            vec![RationalMatrix::zeros(1, 2), RationalMatrix::zeros(2, 1)],
            vec![q(&[vec![1]]), q(&[vec![1, 1], vec![0, 1]]), q(&[vec![1]])],
        )
        .unwrap()
    }

    #[test]
    fn point_gives_circle() {
        let f = FiberData::new(vec![1], vec![], vec![q(&[vec![1]])]).unwrap();
        let c = mapping_torus_complex(&f).unwrap();
        assert_eq!(c.ranks(), &[1, 1]);
        let h0 = homology(&c, 0).unwrap();
        assert_eq!(h0.max_block(&IrreducibleFactor::cyclotomic(1)), 1);
        assert!(homology(&c, 1).unwrap().is_zero());
    }

    #[test]
    fn circle_fiber_gives_torus() {
        let f = FiberData::new(vec![1, 1], vec![RationalMatrix::zeros(1, 1)], vec![q(&[vec![1]]), q(&[vec![1]])])
            .unwrap();
        let c = mapping_torus_complex(&f).unwrap();
        let j = jordan_data(&c).unwrap();
        let one = IrreducibleFactor::cyclotomic(1);
        assert_eq!(j.degree(0).torsion.get(&one), Some(&vec![1]));
        assert_eq!(j.degree(1).torsion.get(&one), Some(&vec![1]));
        assert!(j.degree(2).is_zero());
    }

    #[test]
    fn heisenberg_mapping_torus() {
        let c = mapping_torus_complex(&heisenberg()).unwrap();
        let j = jordan_data(&c).unwrap();
        assert_eq!(j.s(1, &IrreducibleFactor::cyclotomic(1)), 2);
        let direct = monodromy_alexander(&induced_homology_action(&heisenberg()).unwrap()).unwrap();
        for i in 0..4 {
            assert_eq!(direct.degree(i), j.degree(i));
        }
    }

    #[test]
    fn monodromy_examples() {
        let j = monodromy_alexander(&[q(&[vec![0, -1], vec![1, 0]])]).unwrap();
        assert_eq!(j.degree(0).torsion.get(&IrreducibleFactor::cyclotomic(4)), Some(&vec![1]));
        let j = monodromy_alexander(&[RationalMatrix::identity(3)]).unwrap();
        assert_eq!(j.degree(0).torsion.get(&IrreducibleFactor::cyclotomic(1)), Some(&vec![1, 1, 1]));
        assert!(monodromy_alexander(&[q(&[vec![1, 0], vec![0, 0]])]).is_err());
    }

    #[test]
    fn non_commuting_monodromy() {
        let err = FiberData::new(
            vec![2, 1],
            vec![q(&[vec![1], vec![0]])],
            vec![q(&[vec![0, 1], vec![1, 0]]), q(&[vec![1]])],
        )
        .unwrap_err();
        assert_eq!(err, Error::NonCommutingMonodromy(1));
    }
}
