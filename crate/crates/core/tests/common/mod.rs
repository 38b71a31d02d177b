#![allow(dead_code)]

use rand::Rng;
use slater::fock::{lift_local, lift_single_particle, Space};
use slater::linalg::random::{haar_unitary, random_unit_vector};
use slater::linalg::{c64, CMatrix, CVector, Statistics, C64};
use slater::mixed::DensityMatrix;
use slater::pure::{CanonicalSystem, PureState};

pub const SYSTEMS: [CanonicalSystem; 3] = [CanonicalSystem::QubitPair, CanonicalSystem::FermionPair, CanonicalSystem::BosonPair];

pub fn state(space: Space, entries: &[(&[usize], C64)]) -> PureState {
    let e: Vec<(Vec<usize>, C64)> = entries.iter().map(|(t, z)| (t.to_vec(), *z)).collect();
    PureState::from_entries(space, &e).unwrap()
}

pub fn re(x: f64) -> C64 {
    c64(x, 0.0)
}

/// Two electrons in two orbitals after the swap: `(f†₀f†₃ - f†₁f†₂)/√2`.
pub fn swapped_pair() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    state(Space::fermions(2, 4), &[(&[0, 3], re(h)), (&[1, 2], re(-h))])
}

/// The same two electrons before the swap, one per orbital.
pub fn initial_pair() -> PureState {
    state(Space::fermions(2, 4), &[(&[0, 2], re(1.0))])
}

/// `(f†₀f†₁ + f†₂f†₃)/√2`: the swapped pair with modes ordered orbital first.
pub fn swapped_pair_mode_order() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    state(Space::fermions(2, 4), &[(&[0, 1], re(h)), (&[2, 3], re(h))])
}

pub fn random_state<R: Rng>(space: Space, rng: &mut R) -> PureState {
    PureState::new(space, random_unit_vector(space.dimension(), rng)).unwrap()
}

/// Haar single-particle unitary lifted to the space (local unitaries for qubit pairs).
pub fn random_lift<R: Rng>(space: &Space, rng: &mut R) -> CMatrix {
    match *space {
        Space::Bipartite { dim_a, dim_b } => lift_local(&haar_unitary(dim_a, rng), &haar_unitary(dim_b, rng)),
        _ => lift_single_particle(&haar_unitary(space.single_particle_dim(), rng), space).unwrap(),
    }
}

pub fn random_mixture<R: Rng>(space: Space, rank: usize, rng: &mut R) -> DensityMatrix {
    let w: Vec<f64> = (0..rank).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = w.iter().sum();
    let terms: Vec<(f64, PureState)> = w.iter().map(|p| (p / total, random_state(space, rng))).collect();
    DensityMatrix::mixture(&terms).unwrap()
}

/// Single-particle vector `|e⟩` raised to `|e,…,e⟩` in the symmetric space.
pub fn boson_power(e: &CVector, n: usize) -> PureState {
    let space = Space::bosons(n, e.len());
    let amps = CVector::from_iterator(
        space.dimension(),
        space.basis().iter().map(|t| {
            let mult = slater::fock::occupation_factorial(t);
            let prod: C64 = t.iter().map(|&i| e[i]).product();
            prod * (slater::linalg::factorial(n) / mult).sqrt()
        }),
    );
    PureState::new(space, amps.unscale(e.norm().powi(n as i32))).unwrap()
}

/// Elementary determinant (or permanent) of the first `n` modes, rotated by a Haar unitary.
pub fn rotated_elementary<R: Rng>(stat: Statistics, n: usize, d: usize, rng: &mut R) -> PureState {
    let space = match stat {
        Statistics::Fermion => Space::fermions(n, d),
        Statistics::Boson => Space::bosons(n, d),
    };
    let tuple: Vec<usize> = match stat {
        Statistics::Fermion => (0..n).collect(),
        Statistics::Boson => vec![0; n],
    };
    let base = state(space, &[(&tuple, re(1.0))]);
    base.apply(&random_lift(&space, rng)).unwrap()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
