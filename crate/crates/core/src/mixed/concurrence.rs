//! Closed-form concurrence of the canonical systems and the Slater-number-one
//! criterion built from the ε-contraction matrix `C`.

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{singular_values, takagi_canonical, CMatrix, EpsilonContraction, Statistics, Tolerances, C64};
use crate::pure::CanonicalSystem;

/// `λ_i = √eig(ρ ρ̃)`, descending and padded to the space dimension.
///
/// Computed as the singular values of `τ_ij = ⟨Ψ̃_i|Ψ_j⟩` over the
/// subnormalized eigenvectors, which avoids the square root of a
/// non-Hermitian spectrum.
pub fn wootters_lambdas(rho: &DensityMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    let sys = CanonicalSystem::of(&rho.space())?;
    let phi = rho.spectrum(tol).vectors;
    let tau = phi.transpose() * sys.dual_matrix() * &phi;
    let mut l = singular_values(&tau);
    l.resize(sys.dimension(), 0.0);
    Ok(l)
}

/// `max(0, λ_1 - Σ_{i≥2} λ_i)`.
pub fn wootters_concurrence(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    let l = wootters_lambdas(rho, tol)?;
    Ok((l[0] - l[1..].iter().sum::<f64>()).max(0.0))
}

/// Eigenvalues of `ρ ρ̃` with `ρ̃ = M ρ* M`, sorted by real part descending.
pub fn dual_spectrum(rho: &DensityMatrix) -> Result<Vec<C64>> {
    let sys = CanonicalSystem::of(&rho.space())?;
    let m = sys.dual_matrix();
    let tilde = &m * rho.matrix().conjugate() * &m;
    let prod = rho.matrix() * tilde;
    let mut eig: Vec<C64> = prod
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::NumericalFailure("Schur form of ρρ̃".into()))?
        .iter()
        .copied()
        .collect();
    eig.sort_by(|a, b| b.re.total_cmp(&a.re));
    Ok(eig)
}

#[derive(Debug, Clone)]
pub struct SlaterOneVerdict {
    pub is_class_1: bool,
    /// `|c_i|`, descending, padded with zeros to the rank.
    pub c_values: Vec<f64>,
}

/// Slater number one test from the Takagi values of `C`.
///
/// Fermions: `C_ij = Σ ε^{abcd} w^i_ab w^j_cd`; bosons:
/// `C_ij = Σ ε^{ac} ε^{bd} v^i_ab v^j_cd`, both over the subnormalized
/// eigenvectors.
pub fn slater_number_one_test(rho: &DensityMatrix, tol: &Tolerances) -> Result<SlaterOneVerdict> {
    let stat = match rho.space() {
        // Two fermions in three modes are always a single determinant.
        Space::Antisymmetric { particles: 2, dim: 3 } => {
            return Ok(SlaterOneVerdict { is_class_1: true, c_values: vec![] });
        }
        Space::Antisymmetric { particles: 2, dim: 4 } => Statistics::Fermion,
        Space::Symmetric { particles: 2, dim: 2 } => Statistics::Boson,
        other => return Err(Error::UnsupportedSystem(format!("{other:?}"))),
    };
    let sp = rho.spectrum(tol);
    let r = sp.rank();
    let mats: Vec<CMatrix> = (0..r).map(|i| sp.state(rho.space(), i).coefficient_matrix()).collect::<Result<_>>()?;
    let mut c = CMatrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let v = EpsilonContraction::new(stat, vec![mats[i].clone(), mats[j].clone()], 0).evaluate()?[0].1;
            c[(i, j)] = v;
            c[(j, i)] = v;
        }
    }
    let mut values = takagi_canonical(&c, tol)?.values;
    values.resize(r, 0.0);
    let excess = values.first().copied().unwrap_or(0.0) - values.iter().skip(1).sum::<f64>();
    Ok(SlaterOneVerdict { is_class_1: excess <= tol.recon, c_values: values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::pure::PureState;

    #[test]
    fn pure_bell_and_determinant() {
        let tol = Tolerances::default();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::from_entries(Space::qubits(), &[(vec![0, 1], c64(r, 0.0)), (vec![1, 0], c64(r, 0.0))]).unwrap();
        assert!((wootters_concurrence(&DensityMatrix::pure(&bell), &tol).unwrap() - 1.0).abs() < 1e-12);
        let det = PureState::from_entries(Space::fermions(2, 4), &[(vec![0, 1], c64(1.0, 0.0))]).unwrap();
        let rho = DensityMatrix::pure(&det);
        assert!(wootters_concurrence(&rho, &tol).unwrap() < 1e-12);
        let v = slater_number_one_test(&rho, &tol).unwrap();
        assert!(v.is_class_1 && v.c_values == vec![0.0]);
    }

    #[test]
    fn maximally_correlated_is_not_class_one() {
        let tol = Tolerances::default();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = PureState::from_entries(Space::fermions(2, 4), &[(vec![0, 1], c64(r, 0.0)), (vec![2, 3], c64(r, 0.0))]).unwrap();
        let v = slater_number_one_test(&DensityMatrix::pure(&s), &tol).unwrap();
        assert!(!v.is_class_1);
        assert!((v.c_values[0] - 1.0).abs() < 1e-12);
    }
}
