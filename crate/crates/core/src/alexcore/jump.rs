use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::{IrreducibleFactor, LaurentPoly};
use crate::linalg::{determinantal_gcd, LaurentMatrix};

use super::{FreeComplex, ModuleDecomposition};

/// Generator of `J_i^k`, the determinantal ideal of order `rank C_i - k + 1`
/// of the block sum `d_{i+1} + d_i`. Zero encodes the zero ideal.
pub fn jump_ideal(c: &FreeComplex, i: usize, k: usize) -> Result<LaurentPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("jump ideal index k must be positive".into()));
    }
    c.ensure_valid()?;
    let n = c.rank(i);
    if k > n {
        return Ok(LaurentPoly::one());
    }
    let block = LaurentMatrix::block_diag(&c.boundary(i + 1), &c.boundary(i));
    Ok(determinantal_gcd(&block, n - k + 1))
}

/// `J_i^k` from the decompositions of `H_i` and `H_{i-1}`: zero when
/// `k <= r_i`, otherwise the product over factors `p` of `p` raised to the
/// tail sum `sum_{j >= k - r_i} h'_j` of the merged block sequence.
pub fn jump_ideal_reconstruct(h_i: &ModuleDecomposition, h_prev: &ModuleDecomposition, k: usize) -> LaurentPoly {
    assert!(k >= 1, "k must be positive");
    if k <= h_i.free_rank {
        return LaurentPoly::zero();
    }
    let skip = k - h_i.free_rank - 1;
    let mut merged: BTreeMap<&IrreducibleFactor, Vec<u32>> = BTreeMap::new();
    for m in [h_i, h_prev] {
        for (f, sizes) in &m.torsion {
            merged.entry(f).or_default().extend(sizes.iter().copied());
        }
    }
    let mut acc = LaurentPoly::one();
    for (f, mut seq) in merged {
        seq.sort_unstable_by(|a, b| b.cmp(a));
        let e: u32 = seq.iter().skip(skip).sum();
        acc = &acc * &f.poly.pow(e);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::{circle, homology, torus};
    use super::*;
    use crate::laurent::{canonical, parse_poly};

    fn s(e: u32) -> LaurentPoly {
        parse_poly("t - 1").unwrap().pow(e)
    }

    #[test]
    fn circle_jumps() {
        let c = circle();
        assert_eq!(jump_ideal(&c, 0, 1).unwrap(), s(1));
        assert_eq!(jump_ideal(&c, 1, 1).unwrap(), s(1));
        assert!(jump_ideal(&c, 0, 0).is_err());
        assert!(jump_ideal(&c, 0, 2).unwrap().is_one());
    }

    #[test]
    fn reconstruction_formula() {
        let mut hi = ModuleDecomposition::zero();
        hi.add_block(IrreducibleFactor::cyclotomic(1), 2);
        let mut hp = ModuleDecomposition::zero();
        hp.add_block(IrreducibleFactor::cyclotomic(1), 1);
        assert_eq!(jump_ideal_reconstruct(&hi, &hp, 1), s(3));
        assert_eq!(jump_ideal_reconstruct(&hi, &hp, 2), s(1));
        assert!(jump_ideal_reconstruct(&hi, &hp, 3).is_one());
        let free = ModuleDecomposition::free(3);
        assert!(jump_ideal_reconstruct(&free, &hp, 2).is_zero());
    }

    #[test]
    fn torus_agrees_with_reconstruction() {
        let c = torus();
        for i in 0..=2 {
            let hi = homology(&c, i).unwrap();
            let hp = if i == 0 { ModuleDecomposition::zero() } else { homology(&c, i - 1).unwrap() };
            for k in 1..=4 {
                let a = jump_ideal(&c, i, k).unwrap();
                let b = jump_ideal_reconstruct(&hi, &hp, k);
                assert_eq!(canonical(&a), canonical(&b), "i={} k={}", i, k);
            }
        }
    }
}
