//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slater::fock::{sort_with_sign, Space};
use slater::linalg::random::{gaussian_matrix, gaussian_vector, haar_unitary, random_unit_vector};
use slater::linalg::{c64, pfaffian, CMatrix, CVector, Statistics, Tolerances, C64};
use slater::mixed::{bosonic_ppt_separability, convex_roof_oracle, wootters_concurrence, DensityMatrix, RoofConfig, Separability};
use slater::modes::{fock_to_qubits, mode_bipartition_entropy};
use slater::pure::{
    concurrence_pure, multiparticle_rank_one, slater_decompose_two_particle, two_boson_rank_below, two_fermion_rank_below,
    Certificate, ProbeConfig, PureState, RankClaim,
};
use slater::unitary::{is_dualisation_invariant, kak_decompose};
use slater::witness::{
    edge_state_decompose, maximally_correlated_state, optimal_witness_example, phase_family_state, witness_from_edge,
    witness_value, SearchConfig,
};
use std::time::Instant;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn tol() -> Tolerances {
    Tolerances::default()
}

fn c1_concurrence_exactness() -> Outcome {
    let t = Instant::now();
    let swapped = concurrence_pure(&swapped_pair()).unwrap();
    let initial = concurrence_pure(&initial_pair()).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let ok = (swapped - 1.0).abs() <= 1e-12 && initial.abs() <= 1e-12 && secs < 1.0;
    (ok, format!("C(swapped) = {swapped:.15}, C(initial) = {initial:e}, {secs:.3} s"))
}

/// Two-particle state with `r` canonical terms, rotated by a Haar unitary.
fn rank_r_state<R: Rng>(stat: Statistics, d: usize, r: usize, rng: &mut R) -> PureState {
    let space = match stat {
        Statistics::Fermion => Space::fermions(2, d),
        Statistics::Boson => Space::bosons(2, d),
    };
    let entries: Vec<(Vec<usize>, C64)> = (0..r)
        .map(|i| {
            let t = match stat {
                Statistics::Fermion => vec![2 * i, 2 * i + 1],
                Statistics::Boson => vec![i, i],
            };
            (t, re(rng.random_range(0.2..1.0)))
        })
        .collect();
    let total: f64 = entries.iter().map(|(_, z)| z.norm_sqr()).sum();
    let entries: Vec<_> = entries.into_iter().map(|(t, z)| (t, z / total.sqrt())).collect();
    PureState::from_entries(space, &entries).unwrap().apply(&random_lift(&space, rng)).unwrap()
}

/// Largest `n` whose contraction test reports rank at least `n`.
fn lemma_rank(s: &PureState, stat: Statistics, tol: &Tolerances) -> usize {
    let max = match stat {
        Statistics::Fermion => s.single_particle_dim() / 2,
        Statistics::Boson => s.single_particle_dim(),
    };
    (1..=max)
        .rev()
        .find(|&n| {
            let v = match stat {
                Statistics::Fermion => two_fermion_rank_below(s, n, tol),
                Statistics::Boson => two_boson_rank_below(s, n, tol),
            };
            v.unwrap().claim == RankClaim::AtLeast(n)
        })
        .unwrap_or(0)
}

fn c2_decomposition_soundness() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut agree = 0;
    let mut worst_residual: f64 = 0.0;
    let kinds = [(Statistics::Fermion, 4), (Statistics::Fermion, 6), (Statistics::Fermion, 8), (Statistics::Boson, 2), (Statistics::Boson, 3), (Statistics::Boson, 4)];
    let cases = 200;
    for i in 0..cases {
        let (stat, d) = kinds[i % kinds.len()];
        let max_r = if stat == Statistics::Fermion { d / 2 } else { d };
        let r = rng.random_range(1..=max_r);
        let s = rank_r_state(stat, d, r, &mut rng);
        let dec = slater_decompose_two_particle(&s, &tol()).unwrap();
        worst_residual = worst_residual.max(dec.residual);
        if lemma_rank(&s, stat, &tol()) == dec.rank && dec.rank == r {
            agree += 1;
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = agree == cases && worst_residual <= 1e-9 && secs < 30.0;
    (ok, format!("{agree}/{cases} ranks agree, worst residual {worst_residual:e}, {secs:.2} s"))
}

fn c3_pfaffian_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n = [4, 6, 8][i % 3];
        let g = gaussian_matrix(n, n, &mut rng);
        let a = &g - g.transpose();
        let pf = pfaffian(&a, 1e-12).unwrap();
        let det = a.determinant();
        worst = worst.max((pf * pf - det).norm() / det.norm());
    }
    (worst <= 1e-9, format!("worst relative |pf² - det| = {worst:e}"))
}

/// `Σ ε^{ijkl} w_ij w_kl` by explicit permutation sum.
fn epsilon_pairing(w: &CMatrix) -> C64 {
    let mut s = C64::from(0.0);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    if let Some((_, sign)) = sort_with_sign(&[i, j, k, l]) {
                        s += w[(i, j)] * w[(k, l)] * sign;
                    }
                }
            }
        }
    }
    s
}

fn c4_det_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut worst_det, mut worst_c): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let s = random_state(Space::fermions(2, 4), &mut rng);
        let w = s.coefficient_matrix().unwrap();
        let pairing = epsilon_pairing(&w);
        let q = pairing / 8.0;
        worst_det = worst_det.max((w.determinant() - q * q).norm());
        worst_c = worst_c.max((pairing.norm() - concurrence_pure(&s).unwrap()).abs());
    }
    let ok = worst_det <= 1e-10 && worst_c <= 1e-12;
    (ok, format!("worst |det w - (⟨w̃|w⟩/8)²| = {worst_det:e}, |⟨w̃|w⟩| vs concurrence {worst_c:e}"))
}

fn c5_wootters_vs_oracle() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for sys in SYSTEMS {
        for i in 0..30 {
            let rank = 1 + i % 4;
            let rho = random_mixture(sys.space(), rank, &mut rng);
            let closed = wootters_concurrence(&rho, &tol()).unwrap();
            let cfg = RoofConfig { seed: i as u64, ..RoofConfig::default() };
            let oracle = convex_roof_oracle(&rho, &cfg, &tol()).unwrap();
            worst = worst.max((closed - oracle).abs());
        }
    }
    let secs = t.elapsed().as_secs_f64();
    (worst <= 2e-3 && secs < 300.0, format!("worst |closed form - roof| = {worst:e} over 90 states, {secs:.1} s"))
}

fn c6_unitary_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut rank_flips = 0;
    for sys in SYSTEMS {
        let space = sys.space();
        let psi = random_state(space, &mut rng);
        let rho = random_mixture(space, 3, &mut rng);
        let low = slater_decompose_two_particle(&state(space, &[(&[0, 1], re(1.0))]), &tol()).map(|d| d.rank);
        let c_psi = concurrence_pure(&psi).unwrap();
        let c_rho = wootters_concurrence(&rho, &tol()).unwrap();
        for _ in 0..20 {
            let u = random_lift(&space, &mut rng);
            worst = worst.max((concurrence_pure(&psi.apply(&u).unwrap()).unwrap() - c_psi).abs());
            worst = worst.max((wootters_concurrence(&rho.conjugate_by(&u).unwrap(), &tol()).unwrap() - c_rho).abs());
            let r0 = slater_decompose_two_particle(&psi, &tol()).map(|d| d.rank);
            let r1 = slater_decompose_two_particle(&psi.apply(&u).unwrap(), &tol()).map(|d| d.rank);
            let l1 = slater_decompose_two_particle(&state(space, &[(&[0, 1], re(1.0))]).apply(&u).unwrap(), &tol()).map(|d| d.rank);
            if r0 != r1 || low != l1 {
                rank_flips += 1;
            }
        }
    }
    let w = optimal_witness_example(2, 2, Statistics::Fermion).unwrap();
    let space = w.space();
    let rho = random_mixture(space, 2, &mut rng);
    let v0 = witness_value(&w, &rho).unwrap().value;
    for _ in 0..20 {
        let u = random_lift(&space, &mut rng);
        let v1 = witness_value(&w.conjugate_by(&u, &tol()).unwrap(), &rho.conjugate_by(&u).unwrap()).unwrap().value;
        worst = worst.max((v1 - v0).abs());
    }
    (worst <= 1e-9 && rank_flips == 0, format!("worst change {worst:e}, {rank_flips} rank verdict changes"))
}

fn has_probe(cert: &Certificate, d: usize, i: usize) -> bool {
    let mut e = CVector::zeros(d);
    e[i] = c64(1.0, 0.0);
    match cert {
        Certificate::Probes { violations, .. } => violations.iter().any(|c| c.probes.first().is_some_and(|p| (p - &e).norm() < 1e-15)),
        Certificate::Contractions { .. } => false,
    }
}

fn first_probe_is(cert: &Certificate, d: usize, i: usize) -> bool {
    let mut e = CVector::zeros(d);
    e[i] = c64(1.0, 0.0);
    match cert {
        Certificate::Probes { violations, .. } => violations.first().and_then(|c| c.probes.first()).is_some_and(|p| (p - &e).norm() < 1e-15),
        Certificate::Contractions { .. } => false,
    }
}

fn c7_multiparticle() -> Outcome {
    let cfg = ProbeConfig::default();
    let (x, y) = (0.6, 0.8);
    let three = state(Space::fermions(3, 6), &[(&[0, 1, 2], re(x)), (&[2, 4, 5], re(y))]);
    let v3 = multiparticle_rank_one(&three, &cfg, &tol()).unwrap();
    let ok3 = v3.claim == RankClaim::AtLeast(2) && first_probe_is(&v3.certificate, 6, 2);
    let four = state(Space::fermions(4, 8), &[(&[0, 1, 2, 3], re(0.6)), (&[0, 1, 4, 5], re(0.48)), (&[2, 3, 4, 5], re(0.64))]);
    let v4 = multiparticle_rank_one(&four, &cfg, &tol()).unwrap();
    let ok4 = v4.claim == RankClaim::AtLeast(2) && has_probe(&v4.certificate, 8, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rank_one = 0;
    for i in 0..100 {
        let stat = if i % 2 == 0 { Statistics::Fermion } else { Statistics::Boson };
        let n = rng.random_range(2..=4);
        let d = rng.random_range(n.max(3)..=8);
        let s = rotated_elementary(stat, n, d, &mut rng);
        if multiparticle_rank_one(&s, &cfg, &tol()).unwrap().claim == RankClaim::RankOne {
            rank_one += 1;
        }
    }
    let ok = ok3 && ok4 && rank_one == 100;
    (ok, format!("three fermions, first probe e[2]: {ok3}; four fermions, probe e[1] violates: {ok4}; {rank_one}/100 rotated elementary states rank one"))
}

fn c8_witness_battery() -> Outcome {
    let w = optimal_witness_example(2, 2, Statistics::Fermion).unwrap();
    let mc = maximally_correlated_state(2, Statistics::Fermion).unwrap();
    let on_mc = w.expectation(&mc).unwrap();
    let space = w.space();
    let mut worst_zero: f64 = 0.0;
    for t in [[0usize, 1], [2, 3]] {
        worst_zero = worst_zero.max(w.expectation(&state(space, &[(&t, re(1.0))])).unwrap().abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let phi = [[rng.random_range(0.0..6.3), rng.random_range(0.0..6.3)], [rng.random_range(0.0..6.3), rng.random_range(0.0..6.3)]];
        worst_zero = worst_zero.max(w.expectation(&phase_family_state(phi).unwrap()).unwrap().abs());
    }
    let battery = w.battery(500, 8).unwrap();
    let ok = (on_mc + 1.0).abs() <= 1e-14 && worst_zero <= 1e-10 && battery.min >= -1e-12;
    (ok, format!("Tr(W𝒫) = {on_mc}, worst tangent value {worst_zero:e}, min over {} rank-1 samples {:.3e}", battery.samples, battery.min))
}

fn c9_edge_pipeline() -> Outcome {
    let space = Space::fermions(2, 4);
    let rank1 = state(space, &[(&[0, 2], re(1.0))]);
    let mc = maximally_correlated_state(2, Statistics::Fermion).unwrap();
    let rho = DensityMatrix::mixture(&[(0.5, rank1), (0.5, mc)]).unwrap();
    let cfg = SearchConfig::default();
    let dec = edge_state_decompose(&rho, 2, &cfg, &tol()).unwrap();
    let Some(delta) = dec.edge.as_ref() else {
        return (false, format!("no edge part, p = {}", dec.p));
    };
    let w = witness_from_edge(delta, 2, None, &cfg, &tol()).unwrap();
    let v = witness_value(&w, delta).unwrap().value;
    let ok = (dec.p - 0.5).abs() <= 0.05 && v < -0.1;
    (ok, format!("p = {:.6}, Tr(Wδ) = {v:.6}, residual {:e}", dec.p, dec.residual))
}

/// `|e,e⟩` in the occupation basis, without normalization.
fn sym_square(e: &CVector) -> CVector {
    let space = Space::bosons(2, e.len());
    CVector::from_iterator(
        space.dimension(),
        space.basis().iter().map(|t| if t[0] == t[1] { e[t[0]] * e[t[0]] } else { e[t[0]] * e[t[1]] * std::f64::consts::SQRT_2 }),
    )
}

fn product_mixture<R: Rng>(n: usize, vectors: &[CVector], rng: &mut R) -> DensityMatrix {
    let w: Vec<f64> = vectors.iter().map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = w.iter().sum();
    let terms: Vec<(f64, PureState)> = vectors.iter().zip(&w).map(|(e, p)| (p / total, boson_power(e, n))).collect();
    DensityMatrix::mixture(&terms).unwrap()
}

fn c10_bosonic_ppt() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut rank3 = 0;
    for i in 0..20 {
        let es: Vec<CVector> = (0..3).map(|_| gaussian_vector(3, &mut rng)).collect();
        let rho = product_mixture(2, &es, &mut rng);
        if bosonic_ppt_separability(&rho, i, &tol()).unwrap().verdict == Separability::Separable {
            rank3 += 1;
        }
    }
    let mut rank4 = 0;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let es: Vec<CVector> = (0..4).map(|_| gaussian_vector(3, &mut rng)).collect();
        let rho = product_mixture(2, &es, &mut rng);
        let v = bosonic_ppt_separability(&rho, i, &tol()).unwrap();
        if let (Separability::Separable, Some(dec)) = (v.verdict, v.decomposition) {
            let mut recon = CMatrix::zeros(6, 6);
            for (p, e) in &dec {
                let x = sym_square(e);
                recon += (&x * x.adjoint()).scale(*p);
            }
            let err = max_abs_diff(&recon, rho.matrix());
            worst = worst.max(err);
            if err <= 1e-8 {
                rank4 += 1;
            }
        }
    }
    let mut qubits = 0;
    for i in 0..10 {
        let r = 1 + i % 4;
        let es: Vec<CVector> = (0..r).map(|_| random_unit_vector(2, &mut rng)).collect();
        let rho = product_mixture(3, &es, &mut rng);
        let v = bosonic_ppt_separability(&rho, i as u64, &tol()).unwrap();
        if v.verdict == Separability::Separable && v.rank <= 4 {
            qubits += 1;
        }
    }
    let ok = rank3 == 20 && rank4 == 20 && qubits == 10;
    (ok, format!("rank 3: {rank3}/20, rank 4 recovered: {rank4}/20 (worst {worst:e}), three qubits: {qubits}/10"))
}

fn c11_kak() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut worst_res, mut worst_c): (f64, f64) = (0.0, 0.0);
    let mut invariant = 0;
    for sys in SYSTEMS {
        let n = sys.dimension();
        for _ in 0..100 {
            let u = haar_unitary(n, &mut rng);
            let f = kak_decompose(&u, sys).unwrap();
            worst_res = worst_res.max(f.residual);
            if is_dualisation_invariant(&f.v1, sys).unwrap() && is_dualisation_invariant(&f.v2, sys).unwrap() {
                invariant += 1;
            }
            let psi = random_state(sys.space(), &mut rng);
            let c = concurrence_pure(&psi).unwrap();
            for v in [&f.v1, &f.v2] {
                worst_c = worst_c.max((concurrence_pure(&psi.apply(v).unwrap()).unwrap() - c).abs());
            }
        }
    }
    let ok = worst_res <= 1e-8 && worst_c <= 1e-9 && invariant == 300;
    (ok, format!("worst residual {worst_res:e}, worst concurrence change {worst_c:e}, {invariant}/300 factor pairs commute with dualisation"))
}

fn c12_mode_entropy() -> Outcome {
    let q = fock_to_qubits(&swapped_pair_mode_order()).unwrap();
    let s = mode_bipartition_entropy(&q, &[0, 1]).unwrap();
    ((s - 1.0).abs() <= 1e-12, format!("S = {s:.15} bits"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("concurrence exactness", c1_concurrence_exactness),
        ("decomposition soundness", c2_decomposition_soundness),
        ("pfaffian identity", c3_pfaffian_identity),
        ("determinant identity", c4_det_identity),
        ("closed form vs convex roof", c5_wootters_vs_oracle),
        ("unitary invariance", c6_unitary_invariance),
        ("multi-particle lemmas", c7_multiparticle),
        ("witness battery", c8_witness_battery),
        ("edge pipeline", c9_edge_pipeline),
        ("bosonic PPT", c10_bosonic_ppt),
        ("KAK factorization", c11_kak),
        ("mode entanglement", c12_mode_entropy),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        println!("{} {:>2} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
        failed += usize::from(!ok);
    }
    println!("{}/12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
