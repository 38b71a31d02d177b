//! Occupation-number view of fermionic states: each of the `d` modes
//! becomes a qubit, `f†_{i_1} ⋯ f†_{i_N}|0⟩ ↦ |n_0 n_1 ⋯ n_{d-1}⟩`.
//!
//! Amplitudes are read off the increasing-order monomials with no
//! Jordan-Wigner phase. Bit strings are big-endian: mode 0 is the leftmost
//! bit, so `|1100⟩` has index `12` for four modes.

use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{singular_values, CMatrix, CVector, C64};
use crate::pure::{PureState, NORM_SLACK};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq)]
pub struct OccupationState {
    modes: usize,
    amps: CVector,
}

impl OccupationState {
    /// Normalized state on `modes` qubits (`2^modes` amplitudes).
    pub fn new(modes: usize, amps: CVector) -> Result<Self> {
        if amps.len() != 1 << modes {
            return Err(Error::DimensionMismatch(format!("{} amplitudes for {modes} modes", amps.len())));
        }
        let n2 = amps.norm_squared();
        if (n2 - 1.0).abs() > NORM_SLACK {
            return Err(Error::InvalidState(format!("squared norm {n2} is not 1")));
        }
        Ok(OccupationState { modes, amps: amps.unscale(n2.sqrt()) })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    /// Index of the bit string with the given occupied modes.
    pub fn index_of(&self, occupied: &[usize]) -> usize {
        occupied.iter().fold(0, |acc, &k| acc | 1 << (self.modes - 1 - k))
    }

    pub fn amplitude(&self, occupied: &[usize]) -> C64 {
        self.amps[self.index_of(occupied)]
    }

    /// Particle numbers carrying weight above `tol`.
    pub fn sectors(&self, tol: f64) -> Vec<usize> {
        let set: BTreeSet<usize> =
            (0..self.amps.len()).filter(|&i| self.amps[i].norm_sqr() > tol).map(|i| i.count_ones() as usize).collect();
        set.into_iter().collect()
    }

    pub fn inner(&self, other: &OccupationState) -> Result<C64> {
        if self.modes != other.modes {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amps.dotc(&other.amps))
    }
}

fn add_sector(out: &mut CVector, modes: usize, state: &PureState) -> Result<()> {
    let Space::Antisymmetric { dim, .. } = state.space() else {
        return Err(Error::WrongKind("occupation strings are defined for fermions".into()));
    };
    if dim != modes {
        return Err(Error::SpaceMismatch);
    }
    for (tuple, z) in state.space().basis().iter().zip(state.amplitudes().iter()) {
        let idx = tuple.iter().fold(0, |acc, &k| acc | 1 << (modes - 1 - k));
        out[idx] += *z;
    }
    Ok(())
}

/// `Λ` on one fixed-particle-number fermionic state.
pub fn fock_to_qubits(state: &PureState) -> Result<OccupationState> {
    fock_sum_to_qubits(std::slice::from_ref(state))
}

/// `Λ` on a Fock-space superposition given as one (unnormalized) component per particle number.
///
/// The components must share the mode count and have distinct particle
/// numbers; their squared norms must add up to one.
pub fn fock_sum_to_qubits(components: &[PureState]) -> Result<OccupationState> {
    let first = components.first().ok_or_else(|| Error::InvalidState("no components".into()))?;
    let modes = first.single_particle_dim();
    if modes == 0 || modes >= usize::BITS as usize {
        return Err(Error::OutOfRange(format!("{modes} modes")));
    }
    let mut seen = BTreeSet::new();
    let mut out = CVector::zeros(1 << modes);
    for c in components {
        if !seen.insert(c.particles()) {
            return Err(Error::InvalidState(format!("particle number {} given twice", c.particles())));
        }
        add_sector(&mut out, modes, c)?;
    }
    OccupationState::new(modes, out)
}

/// Von Neumann entropy (bits) of the modes in `left` for the cut `left | rest`.
pub fn mode_bipartition_entropy(state: &OccupationState, left: &[usize]) -> Result<f64> {
    let n = state.modes;
    let set: BTreeSet<usize> = left.iter().copied().collect();
    if set.len() != left.len() || set.is_empty() || set.len() >= n || set.iter().any(|&k| k >= n) {
        return Err(Error::BadPartition(format!("{left:?} is not a proper non-empty subset of {n} modes")));
    }
    let l: Vec<usize> = set.iter().copied().collect();
    let r: Vec<usize> = (0..n).filter(|k| !set.contains(k)).collect();
    let bits = |i: usize, group: &[usize]| group.iter().fold(0, |acc, &k| (acc << 1) | ((i >> (n - 1 - k)) & 1));
    let mut m = CMatrix::zeros(1 << l.len(), 1 << r.len());
    for (i, z) in state.amps.iter().enumerate() {
        m[(bits(i, &l), bits(i, &r))] += *z;
    }
    let p: Vec<f64> = singular_values(&m).into_iter().map(|s| s * s).collect();
    Ok(crate::pure::entropy_of_weights(p.into_iter()))
}
