use super::PureState;
use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{max_abs, svd_sorted, takagi_canonical, youla_canonical, CMatrix, Statistics, Tolerances, C64};

#[derive(Debug, Clone)]
pub struct SchmidtSlaterResult {
    /// `None` for distinguishable parties.
    pub statistics: Option<Statistics>,
    pub rank: usize,
    /// Schmidt values, or canonical values `z_i` of the coefficient matrix, descending.
    pub values: Vec<f64>,
    /// Amplitudes of the canonical terms; squares sum to one.
    pub weights: Vec<f64>,
    /// Bipartite: `[U_A, U_B]`, columns are the Schmidt vectors.
    /// Two particles: `[U]` with `U m Uᵀ` canonical.
    pub transforms: Vec<CMatrix>,
    pub residual: f64,
}

/// `ψ = Σ z_i |a_i⟩|b_i⟩`.
pub fn schmidt_decompose(state: &PureState, tol: &Tolerances) -> Result<SchmidtSlaterResult> {
    if !matches!(state.space(), Space::Bipartite { .. }) {
        return Err(Error::WrongKind("Schmidt decomposition needs a bipartite state".into()));
    }
    let psi = state.coefficient_matrix()?;
    let (u, s, v) = svd_sorted(&psi);
    let top = s.first().copied().unwrap_or(0.0);
    let rank = s.iter().filter(|&&x| top > 0.0 && x > tol.rank_rel * top).count();
    let u_a = crate::linalg::complete_unitary(&u.columns(0, rank).into_owned());
    let u_b = crate::linalg::complete_unitary(&v.columns(0, rank).into_owned().conjugate());
    let mut recon = CMatrix::zeros(psi.nrows(), psi.ncols());
    for (k, &sk) in s.iter().enumerate().take(rank) {
        recon += u_a.column(k) * u_b.column(k).transpose() * C64::from(sk);
    }
    let values: Vec<f64> = s[..rank].to_vec();
    Ok(SchmidtSlaterResult {
        statistics: None,
        rank,
        weights: values.clone(),
        values,
        transforms: vec![u_a, u_b],
        residual: max_abs(&(recon - psi)),
    })
}

/// Slater decomposition of a two-fermion or two-boson state.
pub fn slater_decompose_two_particle(state: &PureState, tol: &Tolerances) -> Result<SchmidtSlaterResult> {
    let (stat, form) = match state.space() {
        Space::Antisymmetric { particles: 2, .. } => {
            (Statistics::Fermion, youla_canonical(&state.coefficient_matrix()?, tol)?)
        }
        Space::Symmetric { particles: 2, .. } => {
            (Statistics::Boson, takagi_canonical(&state.coefficient_matrix()?, tol)?)
        }
        _ => return Err(Error::WrongKind("Slater decomposition needs two fermions or two bosons".into())),
    };
    let factor = match stat {
        Statistics::Fermion => 2.0,
        Statistics::Boson => std::f64::consts::SQRT_2,
    };
    Ok(SchmidtSlaterResult {
        statistics: Some(stat),
        rank: form.values.len(),
        weights: form.values.iter().map(|z| factor * z).collect(),
        values: form.values,
        transforms: vec![form.unitary],
        residual: form.residual,
    })
}
