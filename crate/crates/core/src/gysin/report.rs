use std::fmt;

use crate::dga::{stabilized_modules, thicken, truncated_cohomology, DEFAULT_M_MAX};
use crate::error::Result;

use super::input::{GysinInput, GysinModel, Purity};
use super::spectral::{dual_thickened, spectral_pages, LocalModule, SpectralPage};

/// Bound on the torsion exponent of `H_i` for a variety of dimension `n`:
/// `min(i + 1, 2n - i)`, or `min(i + 1, 2n - i - 1)` for weight-two `eta`.
pub fn torsion_bound(i: usize, n: usize, pure: bool) -> usize {
    let upper = 2 * n as i64 - i as i64 - if pure { 1 } else { 0 };
    (i as i64 + 1).min(upper).max(0) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub degree: usize,
    pub homology: LocalModule,
    pub exponent: usize,
    pub bound: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// Torsion exponents of the total homology against the bound, with edge
/// freeness of the limit page on `p + 2q = 2n` (and `2n - 1` when pure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub purity: Purity,
    pub rows: Vec<BoundRow>,
    pub edges: Vec<Check>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed) && self.edges.iter().all(|c| c.passed)
    }
}

pub fn bound_report(total: &[LocalModule], limit: &SpectralPage, n: usize, purity: Purity) -> BoundReport {
    let pure = purity == Purity::WeightTwo;
    let rows = (0..=2 * n)
        .map(|i| {
            let homology = total.get(i).cloned().unwrap_or_default();
            let exponent = homology.exponent();
            let bound = torsion_bound(i, n, pure);
            BoundRow { degree: i, homology, exponent, bound, passed: exponent <= bound }
        })
        .collect();
    let mut edges = Vec::new();
    let mut lines = vec![2 * n];
    if pure && n >= 1 {
        lines.push(2 * n - 1);
    }
    for line in lines {
        let offenders: Vec<String> = limit
            .nonzero()
            .filter(|((p, q), m)| p + 2 * q == line && !m.is_free())
            .map(|((p, q), m)| format!("({},{}) = {}", p, q, m))
            .collect();
        edges.push(Check::new(
            format!("limit page free on p + 2q = {}", line),
            offenders.is_empty(),
            offenders.join(", "),
        ));
    }
    BoundReport { n, purity, rows, edges }
}

/// Everything computed for one Gysin input.
#[derive(Clone, Debug)]
pub struct GysinReport {
    pub purity: Purity,
    pub pages: Vec<SpectralPage>,
    pub limit: SpectralPage,
    pub total: Vec<LocalModule>,
    pub bounds: BoundReport,
    pub truncation: usize,
    pub checks: Vec<Check>,
}

impl GysinReport {
    pub fn passed(&self) -> bool {
        self.bounds.passed() && self.checks.iter().all(|c| c.passed)
    }
}

/// Default truncation level `2n + 2`.
pub fn default_truncation(n: usize) -> usize {
    2 * n + 2
}

/// Build the model, run pages `E^0..E^4` and the limit, and check the
/// structural claims: vanishing region, semisimple `E^1` and `E^2`,
/// `E^3 = E^4 = E^inf`, the torsion bounds, agreement of the truncated
/// total homology with the truncated cohomology of the model, and of the
/// total homology with the stabilized cohomology shifted by one.
pub fn analyze(g: &GysinInput, truncation: Option<usize>) -> Result<GysinReport> {
    g.eta_classify()?;
    let model = GysinModel::new(g)?;
    analyze_model(&model, truncation)
}

pub fn analyze_model(model: &GysinModel, truncation: Option<usize>) -> Result<GysinReport> {
    let purity = model.purity()?;
    let n = model.n;
    let dc = dual_thickened(model);
    let mut checks = Vec::new();
    let structure = dc.check();
    checks.push(Check::new("double complex", structure.is_ok(), structure.err().unwrap_or_default()));
    let pages = spectral_pages(&dc, 4);
    let limit = dc.limit_page();
    let total: Vec<LocalModule> = (0..=dc.top()).map(|i| dc.total_homology(i)).collect();

    let outside: Vec<String> = pages
        .iter()
        .chain(std::iter::once(&limit))
        .flat_map(|pg| {
            pg.nonzero()
                .filter(|((p, q), _)| p + 2 * q > 2 * n)
                .map(move |((p, q), _)| format!("{:?} at ({},{})", pg.r, p, q))
        })
        .collect();
    checks.push(Check::new("vanishing region", outside.is_empty(), outside.join(", ")));
    for r in [1, 2] {
        let bad: Vec<String> =
            pages[r].nonzero().filter(|(_, m)| !m.is_semisimple()).map(|((p, q), m)| format!("({},{}) = {}", p, q, m)).collect();
        checks.push(Check::new(format!("E^{} semisimple", r), bad.is_empty(), bad.join(", ")));
    }
    checks.push(Check::new("E^3 = E^4", pages[3].same_entries(&pages[4]), ""));
    checks.push(Check::new("E^3 = E^inf", pages[3].same_entries(&limit), ""));
    let mut ranks = Vec::new();
    for (i, h) in total.iter().enumerate() {
        let sum: usize = limit.nonzero().filter(|((p, q), _)| p + q == i).map(|(_, m)| m.free_rank).sum();
        if sum != h.free_rank {
            ranks.push(format!("degree {}: pages {} vs homology {}", i, sum, h.free_rank));
        }
    }
    checks.push(Check::new("free ranks of the limit page", ranks.is_empty(), ranks.join("; ")));

    let m = truncation.unwrap_or_else(|| default_truncation(n));
    let eta = model.eta()?;
    let primal = thicken(&model.algebra, &eta, m)?;
    let mut trunc = Vec::new();
    for i in 0..=dc.top() {
        let dual = dc.truncated_homology(i, m);
        let direct = truncated_cohomology(&primal, i);
        if dual != direct {
            trunc.push(format!("degree {}: {:?} vs {:?}", i, dual.partition, direct.partition));
        }
    }
    checks.push(Check::new(format!("truncated homology at m = {}", m), trunc.is_empty(), trunc.join("; ")));

    let stable = stabilized_modules(&model.algebra, &eta, DEFAULT_M_MAX)?;
    let mut uct = Vec::new();
    for (i, h) in total.iter().enumerate() {
        let free = stable.get(i).map_or(0, |s| s.free_rank);
        let tors = stable.get(i + 1).map(|s| s.torsion.clone()).unwrap_or_default();
        if h.free_rank != free || h.torsion != tors {
            uct.push(format!("degree {}: {} vs free {} torsion {:?}", i, h, free, tors));
        }
    }
    checks.push(Check::new("stabilized cohomology shifted by one", uct.is_empty(), uct.join("; ")));

    let bounds = bound_report(&total, &limit, n, purity);
    Ok(GysinReport { purity, pages, limit, total, bounds, truncation: m, checks })
}

impl fmt::Display for GysinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "eta: {}", self.purity)?;
        for pg in self.pages.iter().chain(std::iter::once(&self.limit)) {
            writeln!(f, "{}", pg)?;
        }
        writeln!(f, "degree  homology  exponent  bound  result")?;
        for r in &self.bounds.rows {
            writeln!(
                f,
                "{:>6}  {:<8}  {:>8}  {:>5}  {}",
                r.degree,
                r.homology.to_string(),
                r.exponent,
                r.bound,
                if r.passed { "pass" } else { "FAIL" }
            )?;
        }
        for c in self.bounds.edges.iter().chain(&self.checks) {
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if !c.passed && !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::{c_minus_two_points, c_star, punctured_torus};
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(torsion_bound(0, 3, false), 1);
        assert_eq!(torsion_bound(6, 3, false), 0);
        assert_eq!(torsion_bound(3, 3, false), 3);
        assert_eq!(torsion_bound(5, 3, true), 0);
        assert_eq!(torsion_bound(1, 1, true), 0);
    }

    #[test]
    fn corpus_reports_pass() {
        for g in [c_star(), c_minus_two_points(), punctured_torus()] {
            let r = analyze(&g, None).unwrap();
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn products_pass() {
        let a = GysinModel::new(&c_star()).unwrap();
        let b = GysinModel::new(&c_minus_two_points()).unwrap();
        let c = GysinModel::new(&punctured_torus()).unwrap();
        for m in [a.product(&a).unwrap(), a.product(&b).unwrap(), c.product(&a).unwrap()] {
            let r = analyze_model(&m, None).unwrap();
            assert!(r.passed(), "{}", r);
        }
        // (C^*)^2 with the diagonal class: H_0 = H_1 = R/s
        let r = analyze_model(&a.product(&a).unwrap(), None).unwrap();
        let s1 = LocalModule { free_rank: 0, torsion: vec![1] };
        assert_eq!(r.total[..3], [s1.clone(), s1, LocalModule::default()]);
    }
}
