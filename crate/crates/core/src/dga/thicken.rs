use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::Rational;

use super::cdga::CdgaPresentation;
use super::pencil::{PencilComplex, StabilizedModule, TruncatedModule};

pub const DEFAULT_M_MAX: usize = 64;

/// A closed element of degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCocycle {
    coefficients: Vec<Rational>,
}

impl OneCocycle {
    pub fn new(a: &CdgaPresentation, coefficients: Vec<Rational>) -> Result<Self> {
        let eta = OneCocycle { coefficients };
        eta.check(a)?;
        Ok(eta)
    }

    pub fn from_ints(a: &CdgaPresentation, coefficients: &[i64]) -> Result<Self> {
        Self::new(a, coefficients.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(a: &CdgaPresentation) -> Self {
        OneCocycle { coefficients: vec![Rational::zero(); a.dim(1)] }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    fn check(&self, a: &CdgaPresentation) -> Result<()> {
        if self.coefficients.len() != a.dim(1) {
            return Err(Error::Dimension(format!(
                "eta has {} coefficients but degree 1 has dimension {}",
                self.coefficients.len(),
                a.dim(1)
            )));
        }
        let d = a.differential(1).mul(&RationalMatrix::column(self.coefficients.clone()));
        if !d.is_zero() {
            return Err(Error::EtaNotClosed);
        }
        Ok(())
    }
}

/// The complex `A (x) Q[s]` with differential `d + s (eta ^ -)`.
///
/// Multiplication by `eta` is on the left, which makes the square of the
/// differential vanish for the Koszul sign rule; on degree `k` it equals
/// `(-1)^k` times multiplication on the right.
pub fn thickened_pencil(a: &CdgaPresentation, eta: &OneCocycle) -> Result<PencilComplex> {
    eta.check(a)?;
    let degrees = a.top() + 1;
    let constant = (0..degrees).map(|k| a.differential(k)).collect();
    let linear = (0..degrees).map(|k| a.left_mult(1, eta.coefficients(), k)).collect();
    PencilComplex::new(a.dims(), constant, linear)
}

/// A thickened complex truncated at `s^m = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickenedComplex {
    pub pencil: PencilComplex,
    pub level: usize,
}

impl ThickenedComplex {
    /// The `Q`-matrix of the differential on degree `k`, on the basis
    /// `s^j e_a` with index `j * dim A^k + a`.
    pub fn differential(&self, k: usize) -> RationalMatrix {
        self.pencil.level_map(k, self.level)
    }

    pub fn is_square_zero(&self) -> bool {
        (0..self.pencil.dims().len()).all(|k| self.differential(k + 1).mul(&self.differential(k)).is_zero())
    }

    pub fn top(&self) -> usize {
        self.pencil.top()
    }
}

pub fn thicken(a: &CdgaPresentation, eta: &OneCocycle, m: usize) -> Result<ThickenedComplex> {
    if m == 0 {
        return Err(Error::InvalidArgument("truncation level must be positive".into()));
    }
    Ok(ThickenedComplex { pencil: thickened_pencil(a, eta)?, level: m })
}

pub fn truncated_cohomology(c: &ThickenedComplex, i: usize) -> TruncatedModule {
    c.pencil.truncated(i, c.level)
}

/// Stabilized cohomology of every degree.
pub fn stabilized_modules(a: &CdgaPresentation, eta: &OneCocycle, m_max: usize) -> Result<Vec<StabilizedModule>> {
    thickened_pencil(a, eta)?.stabilize(m_max)
}

pub fn stabilized_module(a: &CdgaPresentation, eta: &OneCocycle, i: usize) -> Result<StabilizedModule> {
    let all = stabilized_modules(a, eta, DEFAULT_M_MAX)?;
    Ok(all.get(i).cloned().unwrap_or(StabilizedModule { torsion: Vec::new(), free_rank: 0, level: 1 }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleVerdict {
    pub semisimple: bool,
    /// Degrees with a torsion block of size at least two.
    pub offending_degrees: Vec<usize>,
    pub modules: Vec<StabilizedModule>,
}

impl fmt::Display for SemisimpleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.semisimple {
            f.write_str("semisimple")
        } else {
            let degrees: Vec<String> = self.offending_degrees.iter().map(|d| d.to_string()).collect();
            write!(f, "not semisimple (degrees {})", degrees.join(", "))
        }
    }
}

pub fn semisimple_check(a: &CdgaPresentation, eta: &OneCocycle) -> Result<SemisimpleVerdict> {
    semisimple_check_bounded(a, eta, DEFAULT_M_MAX)
}

pub fn semisimple_check_bounded(a: &CdgaPresentation, eta: &OneCocycle, m_max: usize) -> Result<SemisimpleVerdict> {
    let modules = stabilized_modules(a, eta, m_max)?;
    let offending_degrees: Vec<usize> =
        modules.iter().enumerate().filter(|(_, m)| !m.is_semisimple()).map(|(k, _)| k).collect();
    Ok(SemisimpleVerdict { semisimple: offending_degrees.is_empty(), offending_degrees, modules })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaIndependence {
    /// Degree-0 element with `d(mu) = eta1 - eta2`.
    pub mu: Vec<Rational>,
    pub first: Vec<StabilizedModule>,
    pub second: Vec<StabilizedModule>,
}

impl EtaIndependence {
    pub fn agree(&self) -> bool {
        self.first.len() == self.second.len() && self.first.iter().zip(&self.second).all(|(a, b)| a.same_module(b))
    }
}

/// Compare the stabilized modules of two cohomologous cocycles. When `mu`
/// is absent it is solved for in degree 0.
pub fn eta_independence_test(
    a: &CdgaPresentation,
    eta1: &OneCocycle,
    eta2: &OneCocycle,
    mu: Option<&[Rational]>,
) -> Result<EtaIndependence> {
    eta1.check(a)?;
    eta2.check(a)?;
    let diff: Vec<Rational> =
        eta1.coefficients().iter().zip(eta2.coefficients()).map(|(x, y)| x - y).collect();
    let diff = RationalMatrix::column(diff);
    let d0 = a.differential(0);
    let mu = match mu {
        Some(m) => {
            if m.len() != a.dim(0) || d0.mul(&RationalMatrix::column(m.to_vec())) != diff {
                return Err(Error::NotCohomologous);
            }
            m.to_vec()
        }
        None => d0.solve(&diff).ok_or(Error::NotCohomologous)?.col(0),
    };
    Ok(EtaIndependence {
        mu,
        first: stabilized_modules(a, eta1, DEFAULT_M_MAX)?,
        second: stabilized_modules(a, eta2, DEFAULT_M_MAX)?,
    })
}
