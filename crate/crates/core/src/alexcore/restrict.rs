use num_integer::Integer;

use crate::error::{Error, Result};
use crate::laurent::{euler_phi, FactorKind, IrreducibleFactor};

use super::ModuleDecomposition;

/// The same module over `R_N = Q[u, u^-1]`, `u = t^N`.
///
/// A block `R/(t - a)^h` becomes the single block `R_N/(u - a^N)^h`. For
/// `Phi_d` the `phi(d)` conjugate roots land on primitive `e`-th roots of
/// unity with `e = d / gcd(d, N)`, each hit `phi(d) / phi(e)` times.
pub fn restrict_scalars(m: &ModuleDecomposition, n: usize) -> Result<ModuleDecomposition> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let mut out = ModuleDecomposition::free(m.free_rank * n);
    for (f, sizes) in &m.torsion {
        match &f.kind {
            FactorKind::Cyclotomic(d) => {
                let e = d / d.gcd(&(n as u64));
                let copies = euler_phi(*d) / euler_phi(e);
                let g = IrreducibleFactor::cyclotomic(e);
                for &h in sizes {
                    for _ in 0..copies {
                        out.add_block(g.clone(), h);
                    }
                }
            }
            FactorKind::LinearRational(r) => {
                let g = IrreducibleFactor::linear(&crate::laurent::rational_pow(r, n as i64));
                for &h in sizes {
                    out.add_block(g.clone(), h);
                }
            }
            FactorKind::Unverified => return Err(Error::UnverifiedPower(f.poly.to_string())),
        }
    }
    Ok(out)
}
