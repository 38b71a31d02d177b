//! Slater rank of two-fermion and two-boson states from the contraction
//! lemmas, checked against the canonical form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slater::fock::{lift_single_particle, Space};
use slater::linalg::{c64, random::haar_unitary, Tolerances};
use slater::pure::{slater_decompose_two_particle, two_boson_rank_below, two_fermion_rank_below, PureState};

fn main() -> slater::Result<()> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    // Two canonical blocks in six modes, hidden by a random basis change.
    let space = Space::fermions(2, 6);
    let blocks = PureState::from_entries(space, &[(vec![0, 1], c64(0.8, 0.0)), (vec![2, 3], c64(0.6, 0.0))])?;
    let psi = blocks.apply(&lift_single_particle(&haar_unitary(6, &mut rng), &space)?)?;
    for n in 2..=3 {
        println!("fermions, rank < {n}: {:?}", two_fermion_rank_below(&psi, n, &tol)?.claim);
    }
    let dec = slater_decompose_two_particle(&psi, &tol)?;
    println!("fermions: rank {}, weights {:?}, residual {:.1e}", dec.rank, dec.weights, dec.residual);

    let space = Space::bosons(2, 3);
    let psi = PureState::from_entries(space, &[(vec![0, 0], c64(0.6, 0.0)), (vec![1, 2], c64(0.0, 0.8))])?;
    for n in 2..=3 {
        println!("bosons, rank < {n}: {:?}", two_boson_rank_below(&psi, n, &tol)?.claim);
    }
    let dec = slater_decompose_two_particle(&psi, &tol)?;
    println!("bosons: rank {}, weights {:?}", dec.rank, dec.weights);
    Ok(())
}
