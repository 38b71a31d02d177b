//! Dualisation, magic bases and concurrences for the three canonical
//! two-particle systems: two qubits, two fermions in four modes and two
//! bosons in two modes.

use super::PureState;
use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{c64, CMatrix, CVector, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalSystem {
    /// 2 x 2 distinguishable, basis `00, 01, 10, 11`.
    QubitPair,
    /// Two fermions, `d = 4`, basis `01, 02, 03, 12, 13, 23`.
    FermionPair,
    /// Two bosons, `d = 2`, basis `|2,0⟩, |1,1⟩, |0,2⟩`.
    BosonPair,
}

impl CanonicalSystem {
    pub fn of(space: &Space) -> Result<Self> {
        match *space {
            Space::Bipartite { dim_a: 2, dim_b: 2 } => Ok(CanonicalSystem::QubitPair),
            Space::Antisymmetric { particles: 2, dim: 4 } => Ok(CanonicalSystem::FermionPair),
            Space::Symmetric { particles: 2, dim: 2 } => Ok(CanonicalSystem::BosonPair),
            other => Err(Error::UnsupportedSystem(format!("{other:?}"))),
        }
    }

    pub fn space(&self) -> Space {
        match self {
            CanonicalSystem::QubitPair => Space::qubits(),
            CanonicalSystem::FermionPair => Space::fermions(2, 4),
            CanonicalSystem::BosonPair => Space::bosons(2, 2),
        }
    }

    pub fn dimension(&self) -> usize {
        self.space().dimension()
    }

    /// Real symmetric `M` with `D|ψ⟩ = M |ψ*⟩`; `M² = 1`.
    pub fn dual_matrix(&self) -> CMatrix {
        let entries: &[(usize, usize, f64)] = match self {
            CanonicalSystem::QubitPair => &[(0, 3, 1.0), (1, 2, -1.0), (2, 1, -1.0), (3, 0, 1.0)],
            CanonicalSystem::FermionPair => {
                &[(0, 5, 1.0), (1, 4, -1.0), (2, 3, 1.0), (3, 2, 1.0), (4, 1, -1.0), (5, 0, 1.0)]
            }
            CanonicalSystem::BosonPair => &[(0, 2, 1.0), (1, 1, -1.0), (2, 0, 1.0)],
        };
        let n = self.dimension();
        let mut m = CMatrix::zeros(n, n);
        for &(i, j, x) in entries {
            m[(i, j)] = c64(x, 0.0);
        }
        m
    }

    /// Magic basis as columns; every column satisfies `D χ = χ`.
    pub fn magic_basis(&self) -> CMatrix {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let one = c64(r, 0.0);
        let i = c64(0.0, r);
        let cols: Vec<Vec<C64>> = match self {
            CanonicalSystem::QubitPair => vec![
                vec![0.0.into(), one, -one, 0.0.into()],
                vec![one, 0.0.into(), 0.0.into(), one],
                vec![0.0.into(), i, i, 0.0.into()],
                vec![i, 0.0.into(), 0.0.into(), -i],
            ],
            CanonicalSystem::FermionPair => {
                let e = |a: usize, b: usize, sa: C64, sb: C64| {
                    let mut v = vec![C64::from(0.0); 6];
                    v[a] = sa;
                    v[b] = sb;
                    v
                };
                vec![
                    e(0, 5, one, one),
                    e(1, 4, one, -one),
                    e(2, 3, one, one),
                    e(0, 5, i, -i),
                    e(1, 4, i, i),
                    e(2, 3, i, -i),
                ]
            }
            CanonicalSystem::BosonPair => vec![
                vec![one, 0.0.into(), one],
                vec![i, 0.0.into(), -i],
                vec![0.0.into(), c64(0.0, 1.0), 0.0.into()],
            ],
        };
        let n = self.dimension();
        CMatrix::from_fn(n, n, |r, c| cols[c][r])
    }
}

/// `D|ψ⟩ = M|ψ*⟩`.
pub fn dual_state(state: &PureState) -> Result<PureState> {
    let sys = CanonicalSystem::of(&state.space())?;
    PureState::unnormalized(state.space(), sys.dual_matrix() * state.amplitudes().conjugate())
}

/// `|⟨ψ̃|ψ⟩|`, computed directly as `|ψᵀ M ψ|`.
pub fn concurrence_pure(state: &PureState) -> Result<f64> {
    let sys = CanonicalSystem::of(&state.space())?;
    let a = state.amplitudes();
    Ok((a.transpose() * sys.dual_matrix() * a)[(0, 0)].norm())
}

/// `α_i = ⟨χ_i|ψ⟩`.
pub fn magic_basis_coeffs(state: &PureState) -> Result<CVector> {
    let sys = CanonicalSystem::of(&state.space())?;
    Ok(sys.magic_basis().adjoint() * state.amplitudes())
}

/// `|Σ α_i²|`.
pub fn concurrence_from_magic(alpha: &CVector) -> f64 {
    alpha.iter().map(|a| a * a).sum::<C64>().norm()
}

/// von Neumann entropy (bits) of either reduced state of a bipartite pure state.
pub fn entanglement_entropy(state: &PureState, tol: &crate::linalg::Tolerances) -> Result<f64> {
    if !matches!(state.space(), Space::Bipartite { .. }) {
        return Err(Error::WrongKind("entanglement entropy needs a bipartite state".into()));
    }
    let r = super::schmidt_decompose(state, tol)?;
    Ok(entropy_of_weights(r.values.iter().map(|z| z * z)))
}

pub(crate) fn entropy_of_weights(p: impl Iterator<Item = f64>) -> f64 {
    p.filter(|&x| x > 0.0).map(|x| -x * x.log2()).sum::<f64>().max(0.0)
}

/// `h(x) = -x log₂ x - (1-x) log₂(1-x)`.
pub fn binary_entropy(x: f64) -> f64 {
    entropy_of_weights([x, 1.0 - x].into_iter())
}

/// Entanglement of formation of two qubits with concurrence `c`.
///
/// Values up to `1e-12` above one, as produced by rounding, count as one.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !(0.0..=1.0 + 1e-12).contains(&c) {
        return Err(Error::OutOfRange(format!("concurrence {c} not in [0, 1]")));
    }
    let c = c.min(1.0);
    Ok(binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0))
}
