use crate::error::Result;
use crate::laurent::{LaurentPoly, DEFAULT_CYCLOTOMIC_BOUND};
use crate::linalg::{smith_normal_form, LaurentMatrix};

use super::{FreeComplex, JordanData, ModuleDecomposition};

/// `ker f / im g` for `g: R^m -> R^n`, `f: R^n -> R^k` with `f g = 0`,
/// as a free rank plus the invariant factors of a presentation of the
/// quotient.
#[derive(Clone, Debug)]
pub(crate) struct RawHomology {
    pub free_rank: usize,
    pub factors: Vec<LaurentPoly>,
    pub presentation: LaurentMatrix,
}

pub(crate) fn subquotient(f: &LaurentMatrix, g: &LaurentMatrix, n: usize) -> RawHomology {
    debug_assert_eq!(f.cols(), n);
    debug_assert_eq!(g.rows(), n);
    let sf = smith_normal_form(f, true);
    let r = sf.rank;
    let right_inv = sf.right_inv.expect("transforms requested");
    // kernel coordinates are the last n - r coordinates after right_inv
    let presentation = right_inv.mul(g).submatrix(r..n, 0..g.cols());
    let sp = smith_normal_form(&presentation, false);
    RawHomology {
        free_rank: (n - r) - sp.rank,
        factors: sp.invariant_factors.into_iter().filter(|d| !d.is_unit()).collect(),
        presentation,
    }
}

pub(crate) fn raw_homology(c: &FreeComplex, i: usize) -> RawHomology {
    if i > c.top() || c.ranks().is_empty() {
        return RawHomology { free_rank: 0, factors: Vec::new(), presentation: LaurentMatrix::zeros(0, 0) };
    }
    subquotient(&c.boundary(i), &c.boundary(i + 1), c.rank(i))
}

/// Decompose several raw homology groups, keying uncertified factors
/// consistently across all of them.
pub(crate) fn decompose_all(raws: &[RawHomology], bound: u64) -> Result<Vec<ModuleDecomposition>> {
    let items: Vec<(usize, Vec<LaurentPoly>)> = raws.iter().map(|r| (r.free_rank, r.factors.clone())).collect();
    ModuleDecomposition::family_from_invariant_factors(&items, bound)
}

/// A presentation matrix of `H_i`: its cokernel is `H_i` up to a free
/// summand of rank `rows - rank`.
pub fn homology_presentation(c: &FreeComplex, i: usize) -> Result<LaurentMatrix> {
    c.ensure_valid()?;
    Ok(raw_homology(c, i).presentation)
}

pub fn homology(c: &FreeComplex, i: usize) -> Result<ModuleDecomposition> {
    homology_bounded(c, i, DEFAULT_CYCLOTOMIC_BOUND)
}

pub fn homology_bounded(c: &FreeComplex, i: usize, bound: u64) -> Result<ModuleDecomposition> {
    c.ensure_valid()?;
    Ok(decompose_all(&[raw_homology(c, i)], bound)?.remove(0))
}

pub fn jordan_data(c: &FreeComplex) -> Result<JordanData> {
    jordan_data_bounded(c, DEFAULT_CYCLOTOMIC_BOUND)
}

pub fn jordan_data_bounded(c: &FreeComplex, bound: u64) -> Result<JordanData> {
    c.ensure_valid()?;
    let raws: Vec<RawHomology> = (0..c.ranks().len()).map(|i| raw_homology(c, i)).collect();
    Ok(JordanData::new(decompose_all(&raws, bound)?))
}

fn raw_cohomology(c: &FreeComplex, i: usize) -> RawHomology {
    if i > c.top() || c.ranks().is_empty() {
        return RawHomology { free_rank: 0, factors: Vec::new(), presentation: LaurentMatrix::zeros(0, 0) };
    }
    // delta^i = d_{i+1}^T : C^i -> C^{i+1}
    let out = c.boundary(i + 1).transpose();
    let inc = c.boundary(i).transpose();
    subquotient(&out, &inc, c.rank(i))
}

/// `H^i` of the cochain complex `Hom_R(C, R)` with boundaries transposed.
///
/// This is cohomology with coefficients in the conjugate local system; it
/// satisfies the universal coefficient relation with `H_*(C)` directly.
pub fn dual_cohomology(c: &FreeComplex, i: usize) -> Result<ModuleDecomposition> {
    dual_cohomology_bounded(c, i, DEFAULT_CYCLOTOMIC_BOUND)
}

pub fn dual_cohomology_bounded(c: &FreeComplex, i: usize, bound: u64) -> Result<ModuleDecomposition> {
    c.ensure_valid()?;
    Ok(decompose_all(&[raw_cohomology(c, i)], bound)?.remove(0))
}

/// Cohomology with the original local system: the involution of
/// [`dual_cohomology`].
pub fn twisted_cohomology(c: &FreeComplex, i: usize) -> Result<ModuleDecomposition> {
    Ok(dual_cohomology(c, i)?.involution())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UctReport {
    pub mismatches: Vec<String>,
}

impl UctReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check `H_i = Free(H^i) + Tors(H^{i+1})` for every degree, with the
/// cohomology of [`dual_cohomology`].
pub fn uct_verify(c: &FreeComplex) -> Result<UctReport> {
    c.ensure_valid()?;
    let n = c.ranks().len();
    let mut raws: Vec<RawHomology> = (0..n).map(|i| raw_homology(c, i)).collect();
    raws.extend((0..=n).map(|i| raw_cohomology(c, i)));
    let all = decompose_all(&raws, DEFAULT_CYCLOTOMIC_BOUND)?;
    let (hom, coh) = all.split_at(n);
    let mut report = UctReport::default();
    for i in 0..n {
        if hom[i].free_rank != coh[i].free_rank {
            report.mismatches.push(format!(
                "degree {}: free rank of H_{} is {} but H^{} has {}",
                i, i, hom[i].free_rank, i, coh[i].free_rank
            ));
        }
        if hom[i].torsion != coh[i + 1].torsion {
            report.mismatches.push(format!(
                "degree {}: torsion of H_{} is {} but torsion of H^{} is {}",
                i,
                i,
                ModuleDecomposition { free_rank: 0, torsion: hom[i].torsion.clone() },
                i + 1,
                ModuleDecomposition { free_rank: 0, torsion: coh[i + 1].torsion.clone() }
            ));
        }
    }
    if !coh[0].torsion.is_empty() {
        report.mismatches.push("H^0 has torsion".to_string());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{circle, free_group_2, torus};
    use super::*;
    use crate::laurent::IrreducibleFactor;

    fn cyc1(sizes: &[u32]) -> ModuleDecomposition {
        let mut m = ModuleDecomposition::zero();
        for &h in sizes {
            m.add_block(IrreducibleFactor::cyclotomic(1), h);
        }
        m
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        assert_eq!(homology(&c, 0).unwrap(), cyc1(&[1]));
        assert!(homology(&c, 1).unwrap().is_zero());
        assert!(homology(&c, 5).unwrap().is_zero());
    }

    #[test]
    fn torus_homology() {
        let c = torus();
        assert_eq!(homology(&c, 0).unwrap(), cyc1(&[1]));
        assert_eq!(homology(&c, 1).unwrap(), cyc1(&[1]));
        assert!(homology(&c, 2).unwrap().is_zero());
    }

    #[test]
    fn free_group_homology() {
        let c = free_group_2();
        assert_eq!(homology(&c, 0).unwrap(), cyc1(&[1]));
        assert_eq!(homology(&c, 1).unwrap(), ModuleDecomposition::free(1));
    }

    #[test]
    fn circle_cohomology() {
        let c = circle();
        assert!(dual_cohomology(&c, 0).unwrap().is_zero());
        assert_eq!(dual_cohomology(&c, 1).unwrap(), cyc1(&[1]));
        assert!(uct_verify(&c).unwrap().passed());
        assert!(uct_verify(&torus()).unwrap().passed());
        assert!(uct_verify(&free_group_2()).unwrap().passed());
    }

    #[test]
    fn invalid_complex_is_rejected() {
        let one = LaurentMatrix::identity(1);
        let bad = FreeComplex::new_unchecked(vec![1, 1, 1], vec![one.clone(), one]);
        assert!(homology(&bad, 1).is_err());
    }

    #[test]
    fn zero_boundaries_give_free_homology() {
        let c = FreeComplex::new(vec![2, 3, 1], vec![LaurentMatrix::zeros(2, 3), LaurentMatrix::zeros(3, 1)])
            .unwrap();
        let j = jordan_data(&c).unwrap();
        for (i, n) in [2, 3, 1].into_iter().enumerate() {
            assert_eq!(j.degree(i), ModuleDecomposition::free(n));
            assert!(j.supp(i).is_empty());
        }
    }
}
