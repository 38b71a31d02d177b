mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slater::fock::Space;
use slater::linalg::{c64, CVector};
use slater::modes::{fock_sum_to_qubits, fock_to_qubits, mode_bipartition_entropy, OccupationState};
use slater::pure::PureState;
use slater::Error;

#[test]
fn orbital_cut_of_swapped_pair() {
    let q = fock_to_qubits(&swapped_pair_mode_order()).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(q.amplitude(&[0, 1]), c64(h, 0.0));
    assert_eq!(q.amplitudes()[0b0011], c64(h, 0.0));
    assert!((mode_bipartition_entropy(&q, &[0, 1]).unwrap() - 1.0).abs() < 1e-12);
    // Each spin-orbital alone is maximally mixed as well.
    assert!((mode_bipartition_entropy(&q, &[0]).unwrap() - 1.0).abs() < 1e-12);
    // So is the cut {0, 2}, which takes one mode from each pair.
    assert!((mode_bipartition_entropy(&q, &[0, 2]).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(q.sectors(0.0), vec![2]);
}

#[test]
fn superposition_of_particle_numbers() {
    // (|0000⟩ + f†₀f†₁|0⟩)/√2: a pairing state across sectors.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let vacuum = PureState::unnormalized(Space::fermions(0, 4), CVector::from_element(1, c64(h, 0.0))).unwrap();
    let pair = PureState::unnormalized(Space::fermions(2, 4), {
        let mut v = CVector::zeros(6);
        v[0] = c64(h, 0.0);
        v
    })
    .unwrap();
    let q = fock_sum_to_qubits(&[vacuum.clone(), pair]).unwrap();
    assert_eq!(q.sectors(0.0), vec![0, 2]);
    assert!((mode_bipartition_entropy(&q, &[0]).unwrap() - 1.0).abs() < 1e-12);
    assert!(matches!(fock_sum_to_qubits(&[vacuum.clone(), vacuum]), Err(Error::InvalidState(_))));
}

#[test]
fn bosons_are_rejected() {
    let s = state(Space::bosons(2, 2), &[(&[0, 0], re(1.0))]);
    assert!(matches!(fock_to_qubits(&s), Err(Error::WrongKind(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mapping_is_an_isometry(n in 1usize..4, d in 4usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_state(Space::fermions(n, d), &mut rng);
        let b = random_state(Space::fermions(n, d), &mut rng);
        let (qa, qb) = (fock_to_qubits(&a).unwrap(), fock_to_qubits(&b).unwrap());
        prop_assert!((qa.inner(&qb).unwrap() - a.inner(&b).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn entropy_is_symmetric_under_complement(d in 3usize..7, seed in any::<u64>(), mask in 1u32..63) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = fock_to_qubits(&random_state(Space::fermions(2, d), &mut rng)).unwrap();
        let left: Vec<usize> = (0..d).filter(|k| mask >> k & 1 == 1).collect();
        prop_assume!(!left.is_empty() && left.len() < d);
        let right: Vec<usize> = (0..d).filter(|k| mask >> k & 1 == 0).collect();
        let (sl, sr) = (mode_bipartition_entropy(&q, &left).unwrap(), mode_bipartition_entropy(&q, &right).unwrap());
        prop_assert!((sl - sr).abs() < 1e-10);
        prop_assert!(sl <= left.len().min(right.len()) as f64 + 1e-12);
    }
}

#[test]
fn occupation_state_validation() {
    assert!(matches!(OccupationState::new(2, CVector::zeros(3)), Err(Error::DimensionMismatch(_))));
    assert!(matches!(OccupationState::new(1, CVector::zeros(2)), Err(Error::InvalidState(_))));
}
