//! Density matrices on bipartite, antisymmetric and symmetric spaces.

mod concurrence;
mod ppt;
mod roof;

pub use concurrence::{dual_spectrum, slater_number_one_test, wootters_concurrence, wootters_lambdas, SlaterOneVerdict};
pub use ppt::{
    bosonic_ppt_separability, is_ppt, min_eigenvalue, partial_transpose, partial_transpose_dims, product_vectors_affine,
    product_vectors_in_range, PptVerdict, ProductVectorSolve, Separability,
};
pub use roof::{convex_roof_oracle, RoofConfig};

use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{hermitian_eigen, hermiticity_defect, CMatrix, Tolerances, C64};
use crate::pure::{PureState, NORM_SLACK};

/// Eigenvalues below this are treated as rounding noise when validating.
pub const PSD_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    space: Space,
    matrix: CMatrix,
}

/// `|Ψ_i⟩ = √λ_i |e_i⟩` for the eigenvalues above the rank threshold.
#[derive(Debug, Clone)]
pub struct SubnormalizedSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Columns are the subnormalized eigenvectors.
    pub vectors: CMatrix,
}

impl SubnormalizedSpectrum {
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn state(&self, space: Space, i: usize) -> PureState {
        PureState::unnormalized(space, self.vectors.column(i).into_owned()).expect("dimension fixed by construction")
    }
}

impl DensityMatrix {
    /// Validates Hermiticity and positivity; renormalizes the trace if within slack.
    pub fn new(space: Space, matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        let n = space.dimension();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix for dimension {n}", matrix.nrows(), matrix.ncols())));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > tol.sym {
            return Err(Error::NotAState(format!("not Hermitian, defect {defect:e}")));
        }
        let matrix = (&matrix + matrix.adjoint()).scale(0.5);
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > NORM_SLACK {
            return Err(Error::NotAState(format!("trace {tr}")));
        }
        let matrix = matrix.unscale(tr);
        let (vals, _) = hermitian_eigen(&matrix);
        if let Some(&low) = vals.last() {
            if low < -PSD_SLACK {
                return Err(Error::NotAState(format!("negative eigenvalue {low:e}")));
            }
        }
        Ok(DensityMatrix { space, matrix })
    }

    pub fn pure(state: &PureState) -> Self {
        let a = state.amplitudes();
        DensityMatrix { space: state.space(), matrix: a * a.adjoint() }
    }

    /// `Σ p_i |ψ_i⟩⟨ψ_i|` with weights renormalized to sum to one.
    pub fn mixture(terms: &[(f64, PureState)]) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::NotAState("empty mixture".into()))?;
        let space = first.1.space();
        let total: f64 = terms.iter().map(|t| t.0).sum();
        if terms.iter().any(|t| t.0 < 0.0) || total <= 0.0 {
            return Err(Error::NotAState("mixture weights must be non-negative".into()));
        }
        let mut m = CMatrix::zeros(space.dimension(), space.dimension());
        for (p, s) in terms {
            if s.space() != space {
                return Err(Error::SpaceMismatch);
            }
            let a = s.normalized()?.into_amplitudes();
            m += (&a * a.adjoint()).scale(p / total);
        }
        Ok(DensityMatrix { space, matrix: m })
    }

    pub fn maximally_mixed(space: Space) -> Self {
        let n = space.dimension();
        DensityMatrix { space, matrix: CMatrix::identity(n, n).unscale(n as f64) }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.matrix).0
    }

    pub fn rank(&self, tol: &Tolerances) -> usize {
        self.spectrum(tol).rank()
    }

    pub fn spectrum(&self, tol: &Tolerances) -> SubnormalizedSpectrum {
        let (vals, vecs) = hermitian_eigen(&self.matrix);
        let top = vals.first().copied().unwrap_or(0.0).max(0.0);
        let keep: Vec<usize> = (0..vals.len()).filter(|&i| top > 0.0 && vals[i] > tol.rank_rel * top).collect();
        let n = self.matrix.nrows();
        let vectors = CMatrix::from_fn(n, keep.len(), |r, c| vecs[(r, keep[c])] * C64::from(vals[keep[c]].sqrt()));
        SubnormalizedSpectrum { eigenvalues: keep.iter().map(|&i| vals[i]).collect(), vectors }
    }

    /// `L ρ L†` for a unitary `L` on the same space.
    pub fn conjugate_by(&self, l: &CMatrix) -> Result<Self> {
        if l.nrows() != self.matrix.nrows() || l.ncols() != self.matrix.ncols() {
            return Err(Error::DimensionMismatch("conjugating operator".into()));
        }
        Ok(DensityMatrix { space: self.space, matrix: l * &self.matrix * l.adjoint() })
    }

    /// Projector onto the kernel (eigenvalues at or below the rank threshold).
    pub fn kernel_projector(&self, tol: &Tolerances) -> CMatrix {
        let (vals, vecs) = hermitian_eigen(&self.matrix);
        let top = vals.first().copied().unwrap_or(0.0).max(0.0);
        let n = self.matrix.nrows();
        let mut p = CMatrix::zeros(n, n);
        for (i, &l) in vals.iter().enumerate() {
            if l <= tol.rank_rel * top {
                let v = vecs.column(i);
                p += v * v.adjoint();
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, max_abs};

    #[test]
    fn spectrum_reconstructs() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let a = PureState::from_entries(Space::qubits(), &[(vec![0, 1], c64(r, 0.0)), (vec![1, 0], c64(0.0, r))]).unwrap();
        let b = PureState::from_entries(Space::qubits(), &[(vec![0, 0], c64(1.0, 0.0))]).unwrap();
        let rho = DensityMatrix::mixture(&[(0.3, a), (0.7, b)]).unwrap();
        let sp = rho.spectrum(&Tolerances::default());
        assert_eq!(sp.rank(), 2);
        assert!((sp.eigenvalues.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(max_abs(&(&sp.vectors * sp.vectors.adjoint() - rho.matrix())) < 1e-14);
    }

    #[test]
    fn validation() {
        let tol = Tolerances::default();
        let mut m = CMatrix::identity(4, 4).unscale(4.0);
        m[(0, 0)] = c64(-0.1, 0.0);
        m[(1, 1)] = c64(0.6, 0.0);
        assert!(matches!(DensityMatrix::new(Space::qubits(), m, &tol), Err(Error::NotAState(_))));
        let ok = DensityMatrix::new(Space::qubits(), CMatrix::identity(4, 4).unscale(4.0 - 1e-8), &tol).unwrap();
        assert!((ok.matrix().trace().re - 1.0).abs() < 1e-15);
    }
}
