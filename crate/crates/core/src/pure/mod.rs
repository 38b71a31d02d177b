//! Pure states of distinguishable pairs, fermions and bosons.
//!
//! Amplitudes are stored on the orthonormal occupation basis of
//! [`Space::basis`]. The coefficient tensors used in the literature are
//! views on top of that:
//!
//! * fermions: `w_{i_1…i_N} = sgn(π) c_S / N!`, so `Σ|w|² = 1/N!`;
//! * bosons: `v_{i_1…i_N} = c_S √(∏ n_k!) / N!`.
//!
//! For `N = 2` this gives `w_ij = c_ij / 2` and `v_ii = c_ii / √2`,
//! `v_ij = c_ij / 2`.

mod canonical;
mod decompose;
mod rank;

pub use canonical::{
    binary_entropy, concurrence_from_magic, concurrence_pure, dual_state, entanglement_entropy,
    eof_from_concurrence, magic_basis_coeffs, CanonicalSystem,
};
pub use decompose::{schmidt_decompose, slater_decompose_two_particle, SchmidtSlaterResult};
pub(crate) use canonical::entropy_of_weights;
pub(crate) use rank::two_particle_rank_below;
pub use rank::{
    multiparticle_rank_one, project_reduce, two_boson_rank_below, two_fermion_rank_below, Certificate, ProbeChain,
    ProbeConfig, RankClaim, RankVerdict,
};

use crate::error::{Error, Result};
use crate::fock::{occupation_factorial, sort_with_sign, Space};
use crate::linalg::{factorial, symmetry_defect, antisymmetry_defect, CMatrix, CVector, Tolerances, C64};

/// Renormalization window for input states.
pub const NORM_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    space: Space,
    amps: CVector,
}

impl PureState {
    /// Validated state; renormalized if the norm is within [`NORM_SLACK`] of one.
    pub fn new(space: Space, amps: CVector) -> Result<Self> {
        let s = Self::unnormalized(space, amps)?;
        let n2 = s.amps.norm_squared();
        if (n2 - 1.0).abs() > NORM_SLACK {
            return Err(Error::InvalidState(format!("squared norm {n2} is not 1")));
        }
        // Already-normalized input is kept bit for bit.
        let amps = if (n2 - 1.0).abs() <= 8.0 * f64::EPSILON { s.amps } else { s.amps.unscale(n2.sqrt()) };
        Ok(PureState { space, amps })
    }

    /// Any vector of the right length, including zero.
    pub fn unnormalized(space: Space, amps: CVector) -> Result<Self> {
        if let Space::Antisymmetric { particles, dim } = space {
            if particles > dim {
                return Err(Error::InvalidState(format!("{particles} fermions in {dim} modes")));
            }
        }
        if amps.len() != space.dimension() {
            return Err(Error::DimensionMismatch(format!("{} amplitudes for dimension {}", amps.len(), space.dimension())));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        Ok(PureState { space, amps })
    }

    /// Builds from `(mode tuple, amplitude)` pairs on the occupation basis.
    ///
    /// Fermionic tuples may be unsorted; the permutation sign is applied.
    /// Repeated entries accumulate.
    pub fn from_entries(space: Space, entries: &[(Vec<usize>, C64)]) -> Result<Self> {
        Self::new(space, Self::entries_vector(&space, entries)?)
    }

    pub(crate) fn entries_vector(space: &Space, entries: &[(Vec<usize>, C64)]) -> Result<CVector> {
        let index = space.index_map();
        let mut amps = CVector::zeros(space.dimension());
        for (tuple, z) in entries {
            let (key, sign) = match space {
                Space::Antisymmetric { .. } => sort_with_sign(tuple)
                    .ok_or_else(|| Error::InvalidState(format!("repeated fermionic mode in {tuple:?}")))?,
                Space::Symmetric { .. } => {
                    let mut t = tuple.clone();
                    t.sort_unstable();
                    (t, 1.0)
                }
                Space::Bipartite { .. } => (tuple.clone(), 1.0),
            };
            let i = *index
                .get(&key)
                .ok_or_else(|| Error::InvalidState(format!("basis label {tuple:?} not in {space:?}")))?;
            amps[i] += *z * sign;
        }
        Ok(amps)
    }

    /// Builds from a bipartite `ψ` matrix or a two-particle coefficient matrix (`w` or `v`).
    pub fn from_matrix(space: Space, m: &CMatrix, tol: &Tolerances) -> Result<Self> {
        Self::new(space, Self::matrix_vector(&space, m, tol)?)
    }

    pub(crate) fn matrix_vector(space: &Space, m: &CMatrix, tol: &Tolerances) -> Result<CVector> {
        match *space {
            Space::Bipartite { dim_a, dim_b } => {
                if m.nrows() != dim_a || m.ncols() != dim_b {
                    return Err(Error::DimensionMismatch(format!("{}x{} vs {dim_a}x{dim_b}", m.nrows(), m.ncols())));
                }
                Ok(CVector::from_iterator(dim_a * dim_b, m.transpose().iter().copied()))
            }
            Space::Antisymmetric { particles: 2, dim } | Space::Symmetric { particles: 2, dim } => {
                if m.nrows() != dim || m.ncols() != dim {
                    return Err(Error::DimensionMismatch(format!("{}x{} vs d = {dim}", m.nrows(), m.ncols())));
                }
                let fermion = matches!(space, Space::Antisymmetric { .. });
                if fermion {
                    let defect = antisymmetry_defect(m);
                    if defect > tol.sym {
                        return Err(Error::NotAntisymmetric(defect));
                    }
                } else {
                    let defect = symmetry_defect(m);
                    if defect > tol.sym {
                        return Err(Error::NotSymmetric(defect));
                    }
                }
                let basis = space.basis();
                Ok(CVector::from_iterator(
                    basis.len(),
                    basis.iter().map(|t| {
                        let (i, j) = (t[0], t[1]);
                        if fermion {
                            m[(i, j)] - m[(j, i)]
                        } else if i == j {
                            m[(i, i)] * std::f64::consts::SQRT_2
                        } else {
                            m[(i, j)] + m[(j, i)]
                        }
                    }),
                ))
            }
            _ => Err(Error::WrongKind("coefficient matrices exist only for two particles".into())),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn particles(&self) -> usize {
        self.space.particles()
    }

    pub fn single_particle_dim(&self) -> usize {
        self.space.single_particle_dim()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Ok(PureState { space: self.space, amps: self.amps.unscale(n) })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amps.dotc(&other.amps))
    }

    /// Applies a sector operator without renormalizing.
    pub fn apply(&self, op: &CMatrix) -> Result<PureState> {
        if op.ncols() != self.amps.len() || op.nrows() != self.amps.len() {
            return Err(Error::DimensionMismatch(format!("{}x{} operator on dimension {}", op.nrows(), op.ncols(), self.amps.len())));
        }
        Ok(PureState { space: self.space, amps: op * &self.amps })
    }

    /// Occupation amplitude of an arbitrary (possibly unsorted) tuple.
    pub fn amplitude(&self, tuple: &[usize]) -> C64 {
        let (key, sign) = match self.space {
            Space::Antisymmetric { .. } => match sort_with_sign(tuple) {
                Some(x) => x,
                None => return C64::from(0.0),
            },
            Space::Symmetric { .. } => {
                let mut t = tuple.to_vec();
                t.sort_unstable();
                (t, 1.0)
            }
            Space::Bipartite { .. } => (tuple.to_vec(), 1.0),
        };
        self.space.index_map().get(&key).map_or(C64::from(0.0), |&i| self.amps[i] * sign)
    }

    /// Entry of the coefficient tensor `w` or `v` (or `ψ` for bipartite states).
    pub fn tensor_element(&self, idx: &[usize]) -> C64 {
        let n = self.particles();
        match self.space {
            Space::Bipartite { .. } => self.amplitude(idx),
            Space::Antisymmetric { .. } => self.amplitude(idx) / factorial(n),
            Space::Symmetric { .. } => {
                let mut t = idx.to_vec();
                t.sort_unstable();
                self.amplitude(idx) * occupation_factorial(&t).sqrt() / factorial(n)
            }
        }
    }

    /// `ψ` (bipartite), `w` (two fermions) or `v` (two bosons).
    pub fn coefficient_matrix(&self) -> Result<CMatrix> {
        match self.space {
            Space::Bipartite { dim_a, dim_b } => Ok(CMatrix::from_row_slice(dim_a, dim_b, self.amps.as_slice())),
            Space::Antisymmetric { particles: 2, dim } | Space::Symmetric { particles: 2, dim } => {
                Ok(CMatrix::from_fn(dim, dim, |i, j| self.tensor_element(&[i, j])))
            }
            _ => Err(Error::WrongKind("coefficient matrices exist only for two particles".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn matrix_round_trip() {
        let tol = Tolerances::default();
        let h = 1.0 / (2.0 * 2f64.sqrt());
        let mut w = CMatrix::zeros(4, 4);
        w[(0, 1)] = c64(h, 0.0);
        w[(1, 0)] = c64(-h, 0.0);
        w[(2, 3)] = c64(h, 0.0);
        w[(3, 2)] = c64(-h, 0.0);
        let s = PureState::from_matrix(Space::fermions(2, 4), &w, &tol).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-14);
        assert!(crate::linalg::max_abs(&(s.coefficient_matrix().unwrap() - w)) < 1e-15);

        let v = CMatrix::from_row_slice(2, 2, &[c64(0.5, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.5, 0.0)]);
        let b = PureState::from_matrix(Space::bosons(2, 2), &v, &tol).unwrap();
        assert!((b.norm() - 1.0).abs() < 1e-14);
        assert!(crate::linalg::max_abs(&(b.coefficient_matrix().unwrap() - v)) < 1e-15);
    }

    #[test]
    fn entries_apply_fermionic_sign() {
        let s = PureState::from_entries(Space::fermions(2, 3), &[(vec![2, 0], c64(1.0, 0.0))]).unwrap();
        assert_eq!(s.amplitude(&[0, 2]), c64(-1.0, 0.0));
        assert_eq!(s.amplitude(&[2, 0]), c64(1.0, 0.0));
    }

    #[test]
    fn rejects_unnormalized() {
        let r = PureState::new(Space::qubits(), CVector::from_element(4, c64(1.0, 0.0)));
        assert!(matches!(r, Err(Error::InvalidState(_))));
        let ok = PureState::new(Space::qubits(), CVector::from_element(4, c64(0.5 + 1e-7, 0.0))).unwrap();
        assert!((ok.norm() - 1.0).abs() < 1e-15);
    }
}
