//! The positive map `M(ρ) = Tr_A(W ρ^{T_A})` attached to a witness.

use super::WitnessOperator;
use crate::error::{Error, Result};
use crate::fock::{embedding, Space};
use crate::linalg::CMatrix;
use crate::mixed::DensityMatrix;

/// `E W E† + (1 - E E†)` on `C^d ⊗ C^d`, where `E` embeds the two-particle sector.
///
/// Acting as the identity on the complementary symmetry sector keeps
/// `⟨e,f|W|e,f⟩ ≥ 0` on every product vector.
pub fn lifted_operator(w: &WitnessOperator) -> CMatrix {
    let e = embedding(&w.space());
    let n = e.nrows();
    &e * w.matrix() * e.adjoint() + CMatrix::identity(n, n) - &e * e.adjoint()
}

/// `M(ρ)_{bc,b'c'} = Σ_{a,a'} W_{ab,a'b'} ρ_{ac,a'c'}` on `H_B ⊗ H_C`.
///
/// `ρ` lives on `C^d ⊗ C^d` (factor `A` first); the output is indexed
/// `b * d + c`.
pub fn jamiolkowski_map_apply(w: &WitnessOperator, rho: &DensityMatrix) -> Result<CMatrix> {
    let d = w.space().single_particle_dim();
    if rho.space() != (Space::Bipartite { dim_a: d, dim_b: d }) {
        return Err(Error::SpaceMismatch);
    }
    let wl = lifted_operator(w);
    let r = rho.matrix();
    let mut m = CMatrix::zeros(d * d, d * d);
    for b in 0..d {
        for bp in 0..d {
            for c in 0..d {
                for cp in 0..d {
                    let mut s = crate::linalg::C64::from(0.0);
                    for a in 0..d {
                        for ap in 0..d {
                            s += wl[(a * d + b, ap * d + bp)] * r[(a * d + c, ap * d + cp)];
                        }
                    }
                    m[(b * d + c, bp * d + cp)] = s;
                }
            }
        }
    }
    Ok(m)
}
