use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Result;
use crate::laurent::{canonical, factor_family, FactorKind, IrreducibleFactor, LaurentPoly};

/// A finitely generated `R`-module `R^r + sum_p sum_j R/(p^{h_j})`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModuleDecomposition {
    pub free_rank: usize,
    /// Block sizes per irreducible factor, weakly decreasing.
    pub torsion: BTreeMap<IrreducibleFactor, Vec<u32>>,
}

impl ModuleDecomposition {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        ModuleDecomposition { free_rank: rank, torsion: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Record a block `R/(factor^size)`.
    pub fn add_block(&mut self, factor: IrreducibleFactor, size: u32) {
        if size == 0 {
            return;
        }
        let seq = self.torsion.entry(factor).or_default();
        seq.push(size);
        seq.sort_unstable_by(|a, b| b.cmp(a));
    }

    /// Decomposition of `R^free + sum R/(d)` for the given elements `d`,
    /// factored with a shared coprime basis for uncertified pieces.
    pub fn from_invariant_factors(free_rank: usize, factors: &[LaurentPoly], bound: u64) -> Result<Self> {
        Ok(Self::family_from_invariant_factors(&[(free_rank, factors.to_vec())], bound)?.remove(0))
    }

    /// Several modules at once, each `R^free + sum R/(d)`; uncertified
    /// factors are keyed by one coprime basis across the whole family.
    pub fn family_from_invariant_factors(
        items: &[(usize, Vec<LaurentPoly>)],
        bound: u64,
    ) -> Result<Vec<Self>> {
        let all: Vec<LaurentPoly> = items
            .iter()
            .flat_map(|(_, ds)| ds.iter().filter(|d| !d.is_unit()).cloned())
            .collect();
        let mut facs = factor_family(&all, bound)?.into_iter();
        let mut out = Vec::with_capacity(items.len());
        for (free, ds) in items {
            let mut m = Self::free(*free);
            for _ in ds.iter().filter(|d| !d.is_unit()) {
                for (f, e) in facs.next().expect("one factorization per factor").factors {
                    m.add_block(f, e);
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    pub fn supp(&self) -> BTreeSet<IrreducibleFactor> {
        self.torsion.keys().cloned().collect()
    }

    /// Maximal block size for a factor, zero outside the support.
    pub fn max_block(&self, factor: &IrreducibleFactor) -> u32 {
        self.torsion.get(factor).and_then(|s| s.first().copied()).unwrap_or(0)
    }

    /// Same as [`ModuleDecomposition::max_block`], looked up by polynomial.
    pub fn max_block_of(&self, poly: &LaurentPoly) -> u32 {
        let c = canonical(poly);
        self.torsion
            .iter()
            .find(|(f, _)| f.poly == c)
            .and_then(|(_, s)| s.first().copied())
            .unwrap_or(0)
    }

    pub fn sizes_of(&self, poly: &LaurentPoly) -> Vec<u32> {
        let c = canonical(poly);
        self.torsion.iter().find(|(f, _)| f.poly == c).map(|(_, s)| s.clone()).unwrap_or_default()
    }

    /// Dimension of the torsion part over `Q`.
    pub fn torsion_dimension(&self) -> usize {
        self.torsion
            .iter()
            .map(|(f, s)| f.degree() * s.iter().map(|&h| h as usize).sum::<usize>())
            .sum()
    }

    /// Sum of all block sizes over all factors.
    pub fn torsion_length(&self) -> usize {
        self.torsion.values().map(|s| s.iter().map(|&h| h as usize).sum::<usize>()).sum()
    }

    /// Every torsion block has size one.
    pub fn is_semisimple(&self) -> bool {
        self.torsion.values().all(|s| s.iter().all(|&h| h == 1))
    }

    pub fn has_unverified(&self) -> bool {
        self.torsion.keys().any(|f| f.kind == FactorKind::Unverified)
    }

    /// The same module with `t` acting through `t -> t^-1`.
    pub fn involution(&self) -> Self {
        let mut out = Self::free(self.free_rank);
        for (f, sizes) in &self.torsion {
            let poly = canonical(&f.poly.involution());
            let g = match &f.kind {
                FactorKind::Cyclotomic(_) => f.clone(),
                FactorKind::LinearRational(r) => IrreducibleFactor::linear(&r.recip()),
                FactorKind::Unverified => IrreducibleFactor { poly, kind: FactorKind::Unverified },
            };
            for &h in sizes {
                out.add_block(g.clone(), h);
            }
        }
        out
    }

    /// The product of all torsion blocks, as a polynomial.
    pub fn torsion_order(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for (f, sizes) in &self.torsion {
            let e: u32 = sizes.iter().sum();
            acc = &acc * &f.poly.pow(e);
        }
        acc
    }
}

impl fmt::Display for ModuleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "R".to_string() } else { format!("R^{}", self.free_rank) });
        }
        for (fac, sizes) in &self.torsion {
            for &h in sizes {
                if h == 1 {
                    parts.push(format!("R/({})", fac.poly));
                } else {
                    parts.push(format!("R/({})^{}", fac.poly, h));
                }
            }
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Per-degree decompositions of the homology of a complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JordanData {
    pub degrees: Vec<ModuleDecomposition>,
}

impl JordanData {
    pub fn new(degrees: Vec<ModuleDecomposition>) -> Self {
        JordanData { degrees }
    }

    pub fn degree(&self, i: usize) -> ModuleDecomposition {
        self.degrees.get(i).cloned().unwrap_or_default()
    }

    /// Degreewise equality, trailing zero modules ignored.
    pub fn same_modules(&self, other: &JordanData) -> bool {
        (0..self.degrees.len().max(other.degrees.len())).all(|i| self.degree(i) == other.degree(i))
    }

    pub fn supp(&self, i: usize) -> BTreeSet<IrreducibleFactor> {
        self.degrees.get(i).map(|d| d.supp()).unwrap_or_default()
    }

    /// Maximal Jordan block size at degree `i`.
    pub fn s(&self, i: usize, factor: &IrreducibleFactor) -> u32 {
        self.degrees.get(i).map_or(0, |d| d.max_block(factor))
    }

    pub fn top(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }
}
