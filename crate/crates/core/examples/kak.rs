//! `U = V₁ U_d V₂` for random two-particle unitaries: only `U_d` changes
//! the concurrence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slater::linalg::random::{haar_unitary, random_unit_vector};
use slater::pure::{concurrence_pure, CanonicalSystem, PureState};
use slater::unitary::{dimension_count, kak_decompose};

fn main() -> slater::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for sys in [CanonicalSystem::QubitPair, CanonicalSystem::FermionPair, CanonicalSystem::BosonPair] {
        let u = haar_unitary(sys.dimension(), &mut rng);
        let f = kak_decompose(&u, sys)?;
        let psi = PureState::new(sys.space(), random_unit_vector(sys.dimension(), &mut rng))?;
        let c = concurrence_pure(&psi)?;
        let c1 = concurrence_pure(&psi.apply(&f.v1)?)?;
        let (h, phases, g) = dimension_count(sys);
        println!("{sys:?}: residual {:.1e}, phases {:.4?}", f.residual, f.phases);
        println!("  C(ψ) = {c:.6}, C(V₁ψ) = {c1:.6}; dim H = {h}, {phases} phases, dim G = {g}");
    }
    Ok(())
}
