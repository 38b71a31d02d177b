//! Brute-force oracles and property tests for the dense kernels.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slater::fock::sort_with_sign;
use slater::linalg::{
    c64, numerical_rank, pfaffian, random, singular_values, takagi_canonical, youla_canonical, CMatrix,
    EpsilonContraction, Statistics, Tolerances, C64,
};

fn antisym(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random::gaussian_matrix(n, n, &mut rng);
    &g - g.transpose()
}

fn sym(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random::gaussian_matrix(n, n, &mut rng);
    &g + g.transpose()
}

fn eps(idx: &[usize]) -> f64 {
    sort_with_sign(idx).map_or(0.0, |(_, s)| s)
}

/// All length-`k` sequences over `0..d`.
fn sequences(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..d).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// Pfaffian straight from the ε-sum definition.
fn pfaffian_bruteforce(a: &CMatrix) -> C64 {
    let n = a.nrows();
    let k = n / 2;
    let mut total = C64::from(0.0);
    for perm in slater_permutations(n) {
        let s = eps(&perm);
        let mut prod = C64::from(1.0);
        for p in 0..k {
            prod *= a[(perm[2 * p], perm[2 * p + 1])];
        }
        total += prod * s;
    }
    let norm: f64 = (1..=k).map(|i| i as f64).product::<f64>() * 2f64.powi(k as i32);
    total / norm
}

fn slater_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in slater_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn fermion_contraction_bruteforce(ops: &[CMatrix], alpha: &[usize]) -> C64 {
    let d = ops[0].nrows();
    let mut total = C64::from(0.0);
    for seq in sequences(d, 2 * ops.len()) {
        let mut full = seq.clone();
        full.extend_from_slice(alpha);
        let s = eps(&full);
        if s == 0.0 {
            continue;
        }
        let mut prod = C64::from(s);
        for (k, w) in ops.iter().enumerate() {
            prod *= w[(seq[2 * k], seq[2 * k + 1])];
        }
        total += prod;
    }
    total
}

fn boson_contraction_bruteforce(ops: &[CMatrix], alpha: &[usize]) -> C64 {
    let d = ops[0].nrows();
    let n = ops.len();
    let mut total = C64::from(0.0);
    let seqs: Vec<(Vec<usize>, f64)> = sequences(d, n)
        .into_iter()
        .filter_map(|s| {
            let mut full = s.clone();
            full.extend_from_slice(alpha);
            let e = eps(&full);
            (e != 0.0).then_some((s, e))
        })
        .collect();
    for (i, ei) in &seqs {
        for (j, ej) in &seqs {
            let mut prod = C64::from(ei * ej);
            for k in 0..n {
                prod *= ops[k][(i[k], j[k])];
            }
            total += prod;
        }
    }
    total
}

#[test]
fn pfaffian_matches_definition_up_to_eight() {
    for (n, seed) in [(2, 1), (4, 2), (6, 3), (8, 4)] {
        let a = antisym(n, seed);
        let fast = pfaffian(&a, 1e-10).unwrap();
        let slow = pfaffian_bruteforce(&a);
        assert!((fast - slow).norm() <= 1e-9 * slow.norm().max(1.0), "n = {n}: {fast} vs {slow}");
    }
}

#[test]
fn pfaffian_of_canonical_blocks() {
    let mut a = CMatrix::zeros(4, 4);
    a[(0, 1)] = c64(0.3, 0.0);
    a[(1, 0)] = c64(-0.3, 0.0);
    a[(2, 3)] = c64(0.7, 0.0);
    a[(3, 2)] = c64(-0.7, 0.0);
    assert!((pfaffian(&a, 1e-10).unwrap() - c64(0.21, 0.0)).norm() < 1e-14);
}

#[test]
fn fermion_contraction_matches_bruteforce() {
    let w1 = antisym(6, 10);
    let w2 = antisym(6, 11);
    for ops in [vec![w1.clone(), w1.clone()], vec![w1.clone(), w2.clone()]] {
        let fast = EpsilonContraction::new(Statistics::Fermion, ops.clone(), 2).evaluate().unwrap();
        assert_eq!(fast.len(), 15);
        for (alpha, value) in fast {
            let slow = fermion_contraction_bruteforce(&ops, &alpha);
            assert!((value - slow).norm() <= 1e-9 * slow.norm().max(1.0), "{alpha:?}: {value} vs {slow}");
        }
    }
    let w3 = antisym(6, 12);
    let ops = vec![w1, w2, w3];
    let fast = EpsilonContraction::new(Statistics::Fermion, ops.clone(), 0).evaluate().unwrap();
    let slow = fermion_contraction_bruteforce(&ops, &[]);
    assert!((fast[0].1 - slow).norm() <= 1e-9 * slow.norm());
}

#[test]
fn boson_contraction_matches_bruteforce() {
    let v1 = sym(4, 20);
    let v2 = sym(4, 21);
    for ops in [vec![v1.clone(), v1.clone()], vec![v1.clone(), v2.clone()], vec![v1.clone(), v2, v1]] {
        let free = 4 - ops.len();
        let fast = EpsilonContraction::new(Statistics::Boson, ops.clone(), free).evaluate().unwrap();
        for (alpha, value) in fast {
            let slow = boson_contraction_bruteforce(&ops, &alpha);
            assert!((value - slow).norm() <= 1e-9 * slow.norm().max(1.0), "{alpha:?}: {value} vs {slow}");
        }
    }
}

#[test]
fn contraction_examples() {
    let mut det = CMatrix::zeros(4, 4);
    det[(0, 1)] = c64(0.5, 0.0);
    det[(1, 0)] = c64(-0.5, 0.0);
    let v = EpsilonContraction::power(Statistics::Fermion, &det, 2, 0).evaluate().unwrap();
    assert!(v[0].1.norm() < 1e-15);

    let h = 1.0 / (2.0 * 2f64.sqrt());
    let mut mc = CMatrix::zeros(4, 4);
    mc[(0, 1)] = c64(h, 0.0);
    mc[(1, 0)] = c64(-h, 0.0);
    mc[(2, 3)] = c64(h, 0.0);
    mc[(3, 2)] = c64(-h, 0.0);
    let v = EpsilonContraction::power(Statistics::Fermion, &mc, 2, 0).evaluate().unwrap();
    assert!((v[0].1.norm() - 1.0).abs() < 1e-12);

    let mut b = CMatrix::zeros(3, 3);
    b[(0, 0)] = c64(0.5, 0.0);
    let v = EpsilonContraction::power(Statistics::Boson, &b, 2, 1).evaluate().unwrap();
    assert!(v.iter().all(|(_, x)| x.norm() < 1e-15));
}

#[test]
fn contraction_arity_checked() {
    let w = antisym(4, 1);
    let r = EpsilonContraction::power(Statistics::Fermion, &w, 2, 1).evaluate();
    assert!(matches!(r, Err(slater::Error::ArityMismatch { .. })));
}

#[test]
fn takagi_boson_pair_example() {
    let h = 1.0 / (2.0 * 2f64.sqrt());
    let v = CMatrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(h, 0.0), c64(h, 0.0), c64(0.0, 0.0)]);
    let f = takagi_canonical(&v, &Tolerances::default()).unwrap();
    assert_eq!(f.values.len(), 2);
    assert!(f.values.iter().all(|z| (z - h).abs() < 1e-12));
}

fn sorted_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn youla_congruence_invariant(n in 2usize..8, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let w = antisym(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let q = random::haar_unitary(n, &mut rng);
        let f = youla_canonical(&w, &tol).unwrap();
        prop_assert!(f.residual <= 1e-9 * f.values[0].max(1.0));
        let g = youla_canonical(&(&q * &w * q.transpose()), &tol).unwrap();
        prop_assert!(sorted_close(&f.values, &g.values, 1e-9 * f.values[0].max(1.0)));
    }

    #[test]
    fn takagi_congruence_invariant(n in 1usize..7, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let v = sym(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
        let q = random::haar_unitary(n, &mut rng);
        let f = takagi_canonical(&v, &tol).unwrap();
        prop_assert!(f.residual <= 1e-9 * f.values[0].max(1.0));
        let g = takagi_canonical(&(&q * &v * q.transpose()), &tol).unwrap();
        prop_assert!(sorted_close(&f.values, &g.values, 1e-9 * f.values[0].max(1.0)));
    }

    #[test]
    fn pfaffian_transforms_with_determinant(k in 1usize..5, seed in any::<u64>()) {
        let n = 2 * k;
        let w = antisym(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let q = random::haar_unitary(n, &mut rng);
        let lhs = pfaffian(&(&q * &w * q.transpose()), 1e-10).unwrap();
        let rhs = q.determinant() * pfaffian(&w, 1e-10).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
        let pf = pfaffian(&w, 1e-10).unwrap();
        let det = w.determinant();
        prop_assert!((pf * pf - det).norm() <= 1e-9 * det.norm().max(1.0));
    }

    #[test]
    fn full_contraction_is_scaled_pfaffian(k in 1usize..5, seed in any::<u64>()) {
        let w = antisym(2 * k, seed);
        let value = EpsilonContraction::power(Statistics::Fermion, &w, k, 0).evaluate().unwrap()[0].1;
        let kf: f64 = (1..=k).map(|i| i as f64).product();
        let expect = pfaffian(&w, 1e-10).unwrap() * (2f64.powi(k as i32) * kf);
        prop_assert!((value - expect).norm() <= 1e-9 * expect.norm().max(1.0));
    }

    #[test]
    fn singular_values_sorted_and_rank_monotone(r in 1usize..6, c in 1usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::gaussian_matrix(r, c, &mut rng);
        let s = singular_values(&a);
        prop_assert!(s.iter().all(|&x| x >= 0.0));
        prop_assert!(s.windows(2).all(|p| p[0] >= p[1]));
        let mut last = usize::MAX;
        for t in [1e-12, 1e-6, 1e-2, 0.5, 0.99] {
            let rk = numerical_rank(&a, t);
            prop_assert!(rk <= last);
            last = rk;
        }
    }
}
