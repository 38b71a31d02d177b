//! Closed-form concurrence of mixed states for the three canonical
//! systems, compared with a direct minimization over decompositions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slater::linalg::{random::random_unit_vector, Tolerances};
use slater::mixed::{convex_roof_oracle, slater_number_one_test, wootters_concurrence, DensityMatrix, RoofConfig};
use slater::pure::{CanonicalSystem, PureState};

fn main() -> slater::Result<()> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sys in [CanonicalSystem::QubitPair, CanonicalSystem::FermionPair, CanonicalSystem::BosonPair] {
        let space = sys.space();
        let terms: Vec<(f64, PureState)> =
            [0.5, 0.3, 0.2].iter().map(|&p| Ok((p, PureState::new(space, random_unit_vector(space.dimension(), &mut rng))?))).collect::<slater::Result<_>>()?;
        let rho = DensityMatrix::mixture(&terms)?;
        let closed = wootters_concurrence(&rho, &tol)?;
        let roof = convex_roof_oracle(&rho, &RoofConfig::default(), &tol)?;
        print!("{sys:?}: closed form {closed:.6}, minimized roof {roof:.6}");
        if sys != CanonicalSystem::QubitPair {
            print!(", Slater number one: {}", slater_number_one_test(&rho, &tol)?.is_class_1);
        }
        println!();
    }
    Ok(())
}
