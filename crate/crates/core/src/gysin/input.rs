use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::dga::{validate_cdga, CdgaPresentation, CdgaValidation, OneCocycle, ProductEntry};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::Rational;

/// Cohomology of one stratum `D_J` (`J` empty for the compactification).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// Sorted indices into the component list.
    pub subset: Vec<usize>,
    /// Basis labels of `H^p(D_J)` for each `p`.
    pub labels: Vec<Vec<String>>,
}

impl Stratum {
    pub fn betti(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.len()).collect()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.labels.get(p).map_or(0, |l| l.len())
    }
}

/// Gysin map `H^p(D_J) -> H^{p+2}(D_{J'})` for `J' = J` minus one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinMap {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub p: usize,
    pub matrix: RationalMatrix,
}

/// Stratum data of a good compactification together with a class `eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinInput {
    /// Complex dimension.
    pub n: usize,
    pub components: Vec<String>,
    pub strata: Vec<Stratum>,
    /// Cup products of basis classes by label, for disjoint strata; the
    /// result lives on the union.
    pub cup: Vec<ProductEntry>,
    pub gysin: Vec<GysinMap>,
    /// Coefficients on the basis of `H^1` of the compactification.
    pub eta_weight1: Vec<Rational>,
    /// Coefficients on the bases of `H^0(D_j)`, components in order.
    pub eta_weight2: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purity {
    /// Only the `H^1` part of the compactification is present.
    WeightOne,
    /// Only the residue part is present: type `(1, 1)`.
    WeightTwo,
    Mixed,
}

impl fmt::Display for Purity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Purity::WeightOne => "pure of weight one",
            Purity::WeightTwo => "pure of weight two",
            Purity::Mixed => "mixed",
        })
    }
}

/// A Gysin model with the bigrading of its basis and the split of `eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinModel {
    pub n: usize,
    pub algebra: CdgaPresentation,
    /// `(p, l)` of each basis element, per total degree.
    pub bidegrees: Vec<Vec<(usize, usize)>>,
    /// Degree-1 coordinates of the two parts of `eta`.
    pub eta10: Vec<Rational>,
    pub eta01: Vec<Rational>,
}

fn subset_name(components: &[String], j: &[usize]) -> String {
    let names: Vec<&str> = j.iter().map(|&i| components[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

// sign of the shuffle merging two sorted disjoint index lists
fn shuffle_sign(a: &[usize], b: &[usize]) -> Option<bool> {
    let mut inversions = 0usize;
    for x in a {
        for y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    Some(inversions % 2 == 1)
}

fn signed(c: &Rational, odd: bool) -> Rational {
    if odd {
        -c.clone()
    } else {
        c.clone()
    }
}

impl GysinInput {
    pub fn stratum(&self, j: &[usize]) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.subset == j)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGysin(m));
        let mut seen = std::collections::BTreeSet::new();
        for c in &self.components {
            if !seen.insert(c) {
                return bad(format!("duplicate component '{}'", c));
            }
        }
        let Some(base) = self.stratum(&[]) else {
            return bad("missing the stratum of the empty subset (the compactification)".into());
        };
        if base.dim(0) != 1 {
            return bad(format!("H^0 of the compactification has dimension {}, expected 1", base.dim(0)));
        }
        let mut subsets = std::collections::BTreeSet::new();
        let mut labels = std::collections::BTreeSet::new();
        for s in &self.strata {
            let name = subset_name(&self.components, &s.subset);
            if s.subset.iter().any(|&i| i >= self.components.len()) {
                return bad(format!("stratum refers to an unknown component: {:?}", s.subset));
            }
            if s.subset.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("stratum {} is not a sorted set of components", name));
            }
            if !subsets.insert(s.subset.clone()) {
                return bad(format!("stratum {} given twice", name));
            }
            if s.subset.len() > self.n {
                return bad(format!("stratum {} has codimension above the dimension {}", name, self.n));
            }
            let max_p = 2 * (self.n - s.subset.len());
            for (p, l) in s.labels.iter().enumerate() {
                if p > max_p && !l.is_empty() {
                    return bad(format!("stratum {} has H^{} nonzero above real dimension {}", name, p, max_p));
                }
                for x in l {
                    if !labels.insert(x.clone()) {
                        return bad(format!("duplicate class label '{}'", x));
                    }
                }
            }
            if s.subset.len() >= 2 {
                for skip in 0..s.subset.len() {
                    let mut face = s.subset.clone();
                    face.remove(skip);
                    if self.stratum(&face).is_none() {
                        return bad(format!(
                            "stratum {} is present but its face {} is missing",
                            name,
                            subset_name(&self.components, &face)
                        ));
                    }
                }
            }
        }
        for g in &self.gysin {
            let (Some(from), Some(to)) = (self.stratum(&g.from), self.stratum(&g.to)) else {
                return bad(format!("Gysin map between unknown strata {:?} -> {:?}", g.from, g.to));
            };
            if g.to.len() + 1 != g.from.len() || !g.to.iter().all(|i| g.from.contains(i)) {
                return bad(format!(
                    "Gysin map {} -> {} must drop exactly one component",
                    subset_name(&self.components, &g.from),
                    subset_name(&self.components, &g.to)
                ));
            }
            if g.matrix.rows() != to.dim(g.p + 2) || g.matrix.cols() != from.dim(g.p) {
                return bad(format!(
                    "Gysin map H^{}{} -> H^{}{} is {}x{}, expected {}x{}",
                    g.p,
                    subset_name(&self.components, &g.from),
                    g.p + 2,
                    subset_name(&self.components, &g.to),
                    g.matrix.rows(),
                    g.matrix.cols(),
                    to.dim(g.p + 2),
                    from.dim(g.p)
                ));
            }
        }
        let (w1, w2) = (base.dim(1), self.singletons().iter().map(|s| s.dim(0)).sum::<usize>());
        if self.eta_weight1.len() != w1 || self.eta_weight2.len() != w2 {
            return bad(format!(
                "eta has {} + {} coefficients, expected {} (weight one) + {} (weight two)",
                self.eta_weight1.len(),
                self.eta_weight2.len(),
                w1,
                w2
            ));
        }
        Ok(())
    }

    fn singletons(&self) -> Vec<&Stratum> {
        let mut s: Vec<&Stratum> = self.strata.iter().filter(|s| s.subset.len() == 1).collect();
        s.sort_by(|a, b| a.subset.cmp(&b.subset));
        s
    }

    /// Weight type of `eta`.
    pub fn eta_classify(&self) -> Result<Purity> {
        let w1 = self.eta_weight1.iter().any(|c| !c.is_zero());
        let w2 = self.eta_weight2.iter().any(|c| !c.is_zero());
        match (w1, w2) {
            (false, false) => Err(Error::ZeroEta),
            (true, false) => Ok(Purity::WeightOne),
            (false, true) => Ok(Purity::WeightTwo),
            (true, true) => Ok(Purity::Mixed),
        }
    }
}

/// Where a class label sits: stratum and cohomological degree.
struct Place {
    subset: Vec<usize>,
    p: usize,
}

/// Assemble the Gysin model `A^{p,l} = sum_{|J| = l} H^p(D_J)`.
pub fn build_model(g: &GysinInput) -> Result<CdgaPresentation> {
    Ok(GysinModel::new(g)?.algebra)
}

impl GysinModel {
    pub fn new(g: &GysinInput) -> Result<Self> {
        g.validate()?;
        let mut strata: Vec<&Stratum> = g.strata.iter().collect();
        strata.sort_by(|a, b| (a.subset.len(), &a.subset).cmp(&(b.subset.len(), &b.subset)));
        let top = 2 * g.n;
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        let mut bidegrees: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top + 1];
        let mut place: HashMap<String, Place> = HashMap::new();
        // position of each (subset, p, index) in the model
        let mut position: BTreeMap<(Vec<usize>, usize, usize), (usize, usize)> = BTreeMap::new();
        for s in &strata {
            let l = s.subset.len();
            for (p, ls) in s.labels.iter().enumerate() {
                for (i, x) in ls.iter().enumerate() {
                    let k = p + l;
                    position.insert((s.subset.clone(), p, i), (k, labels[k].len()));
                    labels[k].push(x.clone());
                    bidegrees[k].push((p, l));
                    place.insert(x.clone(), Place { subset: s.subset.clone(), p });
                }
            }
        }
        let lookup = |x: &str| {
            place.get(x).ok_or_else(|| Error::InvalidGysin(format!("cup product refers to unknown class '{}'", x)))
        };
        let mut products = Vec::new();
        for (x, y, combo) in &g.cup {
            let (a, b) = (lookup(x)?, lookup(y)?);
            let Some(odd) = shuffle_sign(&a.subset, &b.subset) else {
                return Err(Error::InvalidGysin(format!(
                    "cup product {} * {} of classes on intersecting strata {} and {}",
                    x,
                    y,
                    subset_name(&g.components, &a.subset),
                    subset_name(&g.components, &b.subset)
                )));
            };
            let mut union: Vec<usize> = a.subset.iter().chain(&b.subset).copied().collect();
            union.sort_unstable();
            let l = a.subset.len();
            let mut out = Vec::new();
            for (z, c) in combo {
                let r = lookup(z)?;
                if r.subset != union || r.p != a.p + b.p {
                    return Err(Error::InvalidGysin(format!(
                        "cup product {} * {} must land in H^{} of {}, but '{}' is in H^{} of {}",
                        x,
                        y,
                        a.p + b.p,
                        subset_name(&g.components, &union),
                        z,
                        r.p,
                        subset_name(&g.components, &r.subset)
                    )));
                }
                // (x e_J)(y e_J') = (-1)^{l p'} eps(J, J') (x y) e_{J u J'}
                out.push((z.clone(), signed(c, odd ^ (l * b.p % 2 == 1))));
            }
            products.push((x.clone(), y.clone(), out));
        }
        let mut differential: Vec<RationalMatrix> =
            (0..=top).map(|k| RationalMatrix::zeros(labels.get(k + 1).map_or(0, |l| l.len()), labels[k].len())).collect();
        for gm in &g.gysin {
            let dropped = gm.from.iter().position(|i| !gm.to.contains(i)).expect("validated");
            // d(x e_J) = sum_k (-1)^{p + k - 1} gamma_k(x) e_{J - j_k}, k from 1
            let odd = (gm.p + dropped) % 2 == 1;
            for col in 0..gm.matrix.cols() {
                let (k, c) = position[&(gm.from.clone(), gm.p, col)];
                for row in 0..gm.matrix.rows() {
                    let v = gm.matrix.get(row, col);
                    if v.is_zero() {
                        continue;
                    }
                    let (k2, r) = position[&(gm.to.clone(), gm.p + 2, row)];
                    debug_assert_eq!(k2, k + 1);
                    let cur = differential[k].get(r, c) + signed(v, odd);
                    differential[k].set(r, c, cur);
                }
            }
        }
        let algebra = CdgaPresentation::new(labels, products, differential)?;
        if let CdgaValidation::Violation { axiom, detail } = validate_cdga(&algebra) {
            return Err(Error::InvalidGysin(format!("the model violates {}: {}", axiom, detail)));
        }
        let mut eta10 = vec![Rational::zero(); algebra.dim(1)];
        let mut eta01 = vec![Rational::zero(); algebra.dim(1)];
        for (i, c) in g.eta_weight1.iter().enumerate() {
            eta10[position[&(vec![], 1, i)].1] = c.clone();
        }
        let mut w2 = g.eta_weight2.iter();
        for s in g.singletons() {
            for i in 0..s.dim(0) {
                eta01[position[&(s.subset.clone(), 0, i)].1] = w2.next().expect("validated").clone();
            }
        }
        let model = GysinModel { n: g.n, algebra, bidegrees, eta10, eta01 };
        model.eta()?;
        Ok(model)
    }

    /// `eta = eta10 + eta01` as a cocycle of the model.
    pub fn eta(&self) -> Result<OneCocycle> {
        let v = self.eta10.iter().zip(&self.eta01).map(|(a, b)| a + b).collect();
        OneCocycle::new(&self.algebra, v)
    }

    pub fn purity(&self) -> Result<Purity> {
        let w1 = self.eta10.iter().any(|c| !c.is_zero());
        let w2 = self.eta01.iter().any(|c| !c.is_zero());
        match (w1, w2) {
            (false, false) => Err(Error::ZeroEta),
            (true, false) => Ok(Purity::WeightOne),
            (false, true) => Ok(Purity::WeightTwo),
            (true, true) => Ok(Purity::Mixed),
        }
    }

    /// Model of the product variety: the tensor product with bidegrees and
    /// the classes `eta (x) 1 + 1 (x) eta'`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let algebra = self.algebra.tensor(&other.algebra)?;
        let top = self.algebra.top() + other.algebra.top();
        let mut bidegrees = vec![Vec::new(); top + 1];
        let mut eta10 = Vec::new();
        let mut eta01 = Vec::new();
        // same enumeration order as the tensor product
        for (k, bk) in bidegrees.iter_mut().enumerate() {
            for p in 0..=k.min(self.algebra.top()) {
                let q = k - p;
                if q > other.algebra.top() {
                    continue;
                }
                for a in 0..self.algebra.dim(p) {
                    for b in 0..other.algebra.dim(q) {
                        let (x, y) = (self.bidegrees[p][a], other.bidegrees[q][b]);
                        bk.push((x.0 + y.0, x.1 + y.1));
                        if k == 1 {
                            let (c10, c01) = if p == 1 {
                                (self.eta10[a].clone(), self.eta01[a].clone())
                            } else {
                                (other.eta10[b].clone(), other.eta01[b].clone())
                            };
                            eta10.push(c10);
                            eta01.push(c01);
                        }
                    }
                }
            }
        }
        let model = GysinModel { n: self.n + other.n, algebra, bidegrees, eta10, eta01 };
        model.eta()?;
        Ok(model)
    }
}
