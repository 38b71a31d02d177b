//! Separability of two bosons in three modes from the partial transpose,
//! with the explicit decomposition for rank four.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slater::fock::Space;
use slater::linalg::{random::gaussian_vector, CVector, Statistics, Tolerances, C64};
use slater::mixed::{bosonic_ppt_separability, DensityMatrix};
use slater::pure::PureState;
use slater::witness::maximally_correlated_state;

/// `|e,e⟩` for a normalized `e`.
fn condensate(e: &CVector) -> slater::Result<PureState> {
    let e = e.normalize();
    let space = Space::bosons(2, 3);
    let amps = space.basis().into_iter().map(|t| if t[0] == t[1] { e[t[0]] * e[t[0]] } else { e[t[0]] * e[t[1]] * C64::from(2f64.sqrt()) });
    PureState::new(space, CVector::from_iterator(space.dimension(), amps))
}

fn main() -> slater::Result<()> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = [0.4, 0.3, 0.2, 0.1];
    let terms: Vec<(f64, PureState)> = p.iter().map(|&p| Ok((p, condensate(&gaussian_vector(3, &mut rng))?))).collect::<slater::Result<_>>()?;
    let rho = DensityMatrix::mixture(&terms)?;
    let v = bosonic_ppt_separability(&rho, 0, &tol)?;
    println!("rank {} mixture: {:?}, min eigenvalue of ρ^T_A {:.3e}", v.rank, v.verdict, v.min_pt_eigenvalue);
    for (q, e) in v.decomposition.iter().flatten() {
        println!("  p = {:.6}", q * e.norm_squared().powi(2));
    }

    let mc = DensityMatrix::pure(&maximally_correlated_state(3, Statistics::Boson)?);
    let v = bosonic_ppt_separability(&mc, 0, &tol)?;
    println!("maximally correlated state: {:?}, min eigenvalue {:.6}", v.verdict, v.min_pt_eigenvalue);
    Ok(())
}
