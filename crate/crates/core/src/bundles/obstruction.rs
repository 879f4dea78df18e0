use std::fmt;
use std::str::FromStr;

use crate::alexcore::JordanData;
use crate::error::{Error, Result};
use crate::laurent::{FactorKind, IrreducibleFactor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Kahler,
    QuasiProjective,
    /// Quasi-projective with `phi` pure of weight two.
    QuasiProjectivePure,
}

impl FromStr for ClassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kahler" | "compact-kahler" | "compact-kähler" => Ok(ClassKind::Kahler),
            "qproj" | "quasi-projective" => Ok(ClassKind::QuasiProjective),
            "qproj-pure" | "quasi-projective-pure-weight-two" => Ok(ClassKind::QuasiProjectivePure),
            other => Err(Error::InvalidArgument(format!(
                "unknown class '{}', expected kahler, qproj or qproj-pure",
                other
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetClass {
    Kahler,
    QuasiProjective { n: usize },
    QuasiProjectivePure { n: usize },
}

impl TargetClass {
    pub fn new(kind: ClassKind, n: Option<usize>) -> Result<Self> {
        match (kind, n) {
            (ClassKind::Kahler, _) => Ok(TargetClass::Kahler),
            (ClassKind::QuasiProjective, Some(n)) => Ok(TargetClass::QuasiProjective { n }),
            (ClassKind::QuasiProjectivePure, Some(n)) => Ok(TargetClass::QuasiProjectivePure { n }),
            (_, None) => Err(Error::MissingOption(
                "n (complex dimension) is required for quasi-projective classes".into(),
            )),
        }
    }
}

impl fmt::Display for TargetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetClass::Kahler => f.write_str("compact-kähler"),
            TargetClass::QuasiProjective { n } => write!(f, "quasi-projective({})", n),
            TargetClass::QuasiProjectivePure { n } => write!(f, "quasi-projective-pure-weight-two({})", n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Every eigenvalue is a root of unity.
    RootsOfUnity,
    /// All Jordan blocks have size one.
    Semisimplicity,
    /// Block sizes at most `min(i + 1, 2n - i)`.
    JordanBound,
    /// Block sizes at most `min(i + 1, 2n - i - 1)`.
    PureJordanBound,
    /// `H_{2n-1}` is torsion free.
    PureFreeness,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::RootsOfUnity => "roots-of-unity",
            Rule::Semisimplicity => "semisimplicity",
            Rule::JordanBound => "jordan-bound",
            Rule::PureJordanBound => "pure-jordan-bound",
            Rule::PureFreeness => "pure-freeness",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reason {
    pub rule: Rule,
    pub degree: usize,
    pub factor: IrreducibleFactor,
    /// Maximal Jordan block size observed.
    pub observed: u32,
    /// Largest block size the rule allows (`None` when any torsion at this
    /// factor violates it).
    pub allowed: Option<u32>,
    pub caveat: Option<String>,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            Rule::RootsOfUnity => write!(
                f,
                "roots of unity violated at degree {}: factor {} ({}) is not cyclotomic",
                self.degree, self.factor.poly, self.factor.kind
            )?,
            Rule::Semisimplicity => write!(
                f,
                "semi-simplicity violated at degree {}: factor {} has a Jordan block of size {}",
                self.degree, self.factor.poly, self.observed
            )?,
            Rule::JordanBound | Rule::PureJordanBound => write!(
                f,
                "{} violated at degree {}: factor {} has a Jordan block of size {} > {}",
                self.rule.name(),
                self.degree,
                self.factor.poly,
                self.observed,
                self.allowed.unwrap_or(0)
            )?,
            Rule::PureFreeness => write!(
                f,
                "pure-freeness violated at degree {}: torsion at factor {} (block size {})",
                self.degree, self.factor.poly, self.observed
            )?,
        }
        if let Some(c) = &self.caveat {
            write!(f, " [{}]", c)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub class_tested: TargetClass,
    pub reasons: Vec<Reason>,
}

impl ObstructionVerdict {
    pub fn obstructed(&self) -> bool {
        !self.reasons.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.obstructed() {
            "obstructed"
        } else {
            "pass"
        }
    }
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {}: {}", self.class_tested, self.verdict())?;
        for r in &self.reasons {
            write!(f, "\n  - {}", r)?;
        }
        Ok(())
    }
}

fn bound(i: usize, upper: i64) -> u32 {
    (i as i64 + 1).min(upper).max(0) as u32
}

/// Test Jordan data against the monodromy restrictions of a target class.
pub fn obstruction_check(j: &JordanData, class: TargetClass) -> ObstructionVerdict {
    let mut reasons = Vec::new();
    for (i, m) in j.degrees.iter().enumerate() {
        for (f, sizes) in &m.torsion {
            let s = sizes.first().copied().unwrap_or(0);
            let reason = |rule, allowed, caveat| Reason {
                rule,
                degree: i,
                factor: f.clone(),
                observed: s,
                allowed,
                caveat,
            };
            match &f.kind {
                FactorKind::Cyclotomic(_) => {}
                FactorKind::LinearRational(_) => reasons.push(reason(Rule::RootsOfUnity, None, None)),
                FactorKind::Unverified => reasons.push(reason(
                    Rule::RootsOfUnity,
                    None,
                    Some("factor kind unverified: no cyclotomic factor up to the search bound".to_string()),
                )),
            }
            match class {
                TargetClass::Kahler => {
                    if s > 1 {
                        reasons.push(reason(Rule::Semisimplicity, Some(1), None));
                    }
                }
                TargetClass::QuasiProjective { n } => {
                    let b = bound(i, 2 * n as i64 - i as i64);
                    if s > b {
                        reasons.push(reason(Rule::JordanBound, Some(b), None));
                    }
                }
                TargetClass::QuasiProjectivePure { n } => {
                    if i + 1 == 2 * n {
                        reasons.push(reason(Rule::PureFreeness, Some(0), None));
                        continue;
                    }
                    let b = bound(i, 2 * n as i64 - i as i64 - 1);
                    if s > b {
                        reasons.push(reason(Rule::PureJordanBound, Some(b), None));
                    }
                }
            }
        }
    }
    ObstructionVerdict { class_tested: class, reasons }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexcore::ModuleDecomposition;

    fn data(blocks: &[(usize, u64, u32)], top: usize) -> JordanData {
        let mut degrees = vec![ModuleDecomposition::zero(); top + 1];
        for &(i, d, h) in blocks {
            degrees[i].add_block(IrreducibleFactor::cyclotomic(d), h);
        }
        JordanData::new(degrees)
    }

    #[test]
    fn kahler_semisimplicity() {
        let heis = data(&[(0, 1, 1), (1, 1, 2), (2, 1, 1)], 3);
        let v = obstruction_check(&heis, TargetClass::Kahler);
        assert!(v.obstructed());
        assert_eq!(v.reasons.len(), 1);
        assert_eq!(v.reasons[0].rule, Rule::Semisimplicity);
        assert_eq!(v.reasons[0].degree, 1);
        assert!(v.reasons[0].to_string().starts_with("semi-simplicity violated at degree 1"));
        let circle = data(&[(0, 1, 1)], 1);
        assert!(!obstruction_check(&circle, TargetClass::Kahler).obstructed());
    }

    #[test]
    fn qproj_boundary() {
        let n = 3;
        let at = |s| data(&[(3, 2, s)], 6);
        assert!(obstruction_check(&at(4), TargetClass::QuasiProjective { n }).obstructed());
        assert!(!obstruction_check(&at(3), TargetClass::QuasiProjective { n }).obstructed());
    }

    #[test]
    fn pure_class() {
        // n = 2: degree 3 must be torsion free, degree 2 allows min(3, 1) = 1
        let d = data(&[(3, 1, 1)], 4);
        let v = obstruction_check(&d, TargetClass::QuasiProjectivePure { n: 2 });
        assert_eq!(v.reasons[0].rule, Rule::PureFreeness);
        assert!(!obstruction_check(&d, TargetClass::QuasiProjective { n: 2 }).obstructed());
        let d = data(&[(2, 1, 2)], 4);
        assert!(obstruction_check(&d, TargetClass::QuasiProjectivePure { n: 2 }).obstructed());
        assert!(!obstruction_check(&d, TargetClass::QuasiProjective { n: 2 }).obstructed());
    }

    #[test]
    fn missing_n() {
        assert!(matches!(TargetClass::new(ClassKind::QuasiProjective, None), Err(Error::MissingOption(_))));
        assert_eq!(TargetClass::new(ClassKind::Kahler, None).unwrap(), TargetClass::Kahler);
        assert_eq!("qproj-pure".parse::<ClassKind>().unwrap(), ClassKind::QuasiProjectivePure);
    }

    #[test]
    fn non_cyclotomic_fires_roots_of_unity() {
        let mut m = ModuleDecomposition::zero();
        m.add_block(IrreducibleFactor::linear(&crate::Rational::from_integer(2.into())), 1);
        let v = obstruction_check(&JordanData::new(vec![m]), TargetClass::Kahler);
        assert_eq!(v.reasons[0].rule, Rule::RootsOfUnity);
    }
}
