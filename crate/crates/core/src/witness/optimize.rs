//! Optimization of witnesses by subtracting positive operators that vanish
//! on the tangent set `T_W = {ψ of rank < k : ⟨ψ|W|ψ⟩ = 0}`.

use super::search::{infimum_over_rank, SearchConfig};
use super::WitnessOperator;
use crate::error::{Error, Result};
use crate::fock::{embedding, Space};
use crate::linalg::{hermitian_eigen, orthonormal_span, random, CMatrix, CVector, Tolerances, C64};
use crate::optim::minimize;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Local minima at or below this value are taken as tangent states.
const TANGENT_VALUE: f64 = 1e-9;
const SPAN_REL: f64 = 1e-4;
const MAX_ROUNDS: usize = 4;

#[derive(Debug, Clone)]
pub struct OptimizedWitness {
    pub witness: WitnessOperator,
    /// Sampled tangent states span the whole space.
    pub optimal: bool,
    /// Dimension of the span of the sampled tangent states of the result.
    pub tangent_span: usize,
    /// `μ` of each subtraction `W -> W - μ P`.
    pub subtracted: Vec<f64>,
    /// For `k = 2`, the `X_e` criterion for the first subtracted `P`.
    pub xe: Option<f64>,
}

fn expectation(a: &CMatrix, v: &CVector) -> f64 {
    v.dotc(&(a * v)).re
}

/// Largest `μ` with `W - μP` still non-negative on rank `< k` states, via
/// Dinkelbach iterations on `⟨W⟩ / ⟨P⟩`.
fn max_subtraction(w: &WitnessOperator, p: &CMatrix, cfg: &SearchConfig, tol: &Tolerances) -> Result<Option<f64>> {
    let (k, space) = (w.slater_class(), w.space());
    let top = infimum_over_rank(&(-p), k, &space, cfg, tol)?;
    let a = top.minimizer().amplitudes().clone();
    let pp = expectation(p, &a);
    if pp < 1e-9 {
        return Ok(None);
    }
    let mut mu = expectation(w.matrix(), &a) / pp;
    for round in 0..30 {
        let round_cfg = SearchConfig { seed: cfg.seed.wrapping_add(1 + round), ..*cfg };
        let r = infimum_over_rank(&(w.matrix() - p.scale(mu)), k, &space, &round_cfg, tol)?;
        if r.value >= -1e-10 {
            break;
        }
        let a = r.minimizer().amplitudes();
        mu = expectation(w.matrix(), a) / expectation(p, a);
    }
    Ok(Some(mu.max(0.0)))
}

fn tangent_span(w: &WitnessOperator, cfg: &SearchConfig, tol: &Tolerances) -> Result<CMatrix> {
    let r = infimum_over_rank(w.matrix(), w.slater_class(), &w.space(), cfg, tol)?;
    if r.value < -1e-8 {
        return Err(Error::OutOfRange(format!("not a witness: ⟨ψ|W|ψ⟩ = {:e} on a rank < k state", r.value)));
    }
    let cols: Vec<CVector> = r
        .minimizers
        .iter()
        .filter(|(v, _)| *v <= TANGENT_VALUE)
        .map(|(_, s)| s.amplitudes().clone())
        .collect();
    let n = w.space().dimension();
    let m = if cols.is_empty() { CMatrix::zeros(n, 0) } else { CMatrix::from_columns(&cols) };
    Ok(orthonormal_span(&m, SPAN_REL))
}

/// Repeatedly subtracts `μP`, `P` the projector onto the complement of the
/// sampled tangent span, until the tangent states span the space.
pub fn witness_optimize(w: &WitnessOperator, cfg: &SearchConfig, tol: &Tolerances) -> Result<OptimizedWitness> {
    let n = w.space().dimension();
    let mut cur = w.clone();
    let mut subtracted = Vec::new();
    let mut xe = None;
    for round in 0..=MAX_ROUNDS {
        let round_cfg = SearchConfig { seed: cfg.seed.wrapping_add(1000 * round as u64), ..*cfg };
        let q = tangent_span(&cur, &round_cfg, tol)?;
        if q.ncols() == n || round == MAX_ROUNDS {
            return Ok(OptimizedWitness { witness: cur, optimal: q.ncols() == n, tangent_span: q.ncols(), subtracted, xe });
        }
        let p = CMatrix::identity(n, n) - &q * q.adjoint();
        if cur.slater_class() == 2 && xe.is_none() {
            xe = Some(xe_criterion(&cur, &p, &round_cfg, tol)?);
        }
        let Some(mu) = max_subtraction(&cur, &p, &round_cfg, tol)? else {
            return Ok(OptimizedWitness { witness: cur, optimal: false, tangent_span: q.ncols(), subtracted, xe });
        };
        subtracted.push(mu);
        cur = WitnessOperator::new(cur.space(), cur.matrix() - p.scale(mu), cur.slater_class(), tol)?;
    }
    unreachable!("loop returns on its last round")
}

/// `X_e = A_e† X A_e` with `A_e f = |e,f⟩ ∓ |f,e⟩` on the zero-extended `X`
/// (minus for fermions, plus for bosons).
fn reduce_on(x_full: &CMatrix, e: &CVector, fermion: bool) -> CMatrix {
    let d = e.len();
    let s = if fermion { -1.0 } else { 1.0 };
    let mut a = CMatrix::zeros(d * d, d);
    for f in 0..d {
        for i in 0..d {
            a[(i * d + f, f)] += e[i];
            a[(f * d + i, f)] += e[i] * s;
        }
    }
    a.adjoint() * x_full * &a
}

/// `λ_min(P_e^{-1/2} W_e P_e^{-1/2})` on the support of `P_e`.
fn xe_value(w_full: &CMatrix, p_full: &CMatrix, e: &CVector, fermion: bool) -> f64 {
    let we = reduce_on(w_full, e, fermion);
    let pe = reduce_on(p_full, e, fermion);
    let (vals, vecs) = hermitian_eigen(&pe);
    let top = vals.first().copied().unwrap_or(0.0);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 1e-10 * top.max(1e-300)).collect();
    if keep.is_empty() {
        return f64::INFINITY;
    }
    let d = e.len();
    let t = CMatrix::from_fn(d, keep.len(), |r, c| vecs[(r, keep[c])] / vals[keep[c]].sqrt());
    let m = t.adjoint() * we * &t;
    hermitian_eigen(&m).0.last().copied().unwrap_or(f64::INFINITY)
}

/// Class-2 subtraction criterion `inf_e [P_e^{-1/2} W_e P_e^{-1/2}]_min`.
///
/// Positive values mean `W - μP` stays a witness for `μ` up to this value.
/// The infimum over unit vectors `e` is estimated by sampling and local
/// refinement, so the result is an upper bound.
pub fn xe_criterion(w: &WitnessOperator, p: &CMatrix, cfg: &SearchConfig, tol: &Tolerances) -> Result<f64> {
    if w.slater_class() != 2 {
        return Err(Error::OutOfRange(format!("X_e criterion needs class 2, got {}", w.slater_class())));
    }
    super::search::check_operator(p, &w.space(), tol)?;
    let fermion = matches!(w.space(), Space::Antisymmetric { .. });
    let e = embedding(&w.space());
    let w_full = &e * w.matrix() * e.adjoint();
    let p_full = &e * p * e.adjoint();
    let d = w.space().single_particle_dim();
    let eval = |x: &[f64]| {
        let v = CVector::from_fn(d, |i, _| C64::new(x[2 * i], x[2 * i + 1]));
        let nv = v.norm();
        if nv < 1e-12 {
            return f64::INFINITY;
        }
        xe_value(&w_full, &p_full, &v.unscale(nv), fermion)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut starts: Vec<(f64, Vec<f64>)> = (0..4 * cfg.restarts.max(1))
        .map(|_| {
            let z = random::random_unit_vector(d, &mut rng);
            let x: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
            (eval(&x), x)
        })
        .collect();
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = starts[0].0;
    for (_, x0) in starts.into_iter().take(4) {
        let fd = |x: &[f64]| {
            let f0 = eval(x);
            let g = (0..x.len())
                .map(|i| {
                    let mut xp = x.to_vec();
                    let mut xm = x.to_vec();
                    xp[i] += 1e-6;
                    xm[i] -= 1e-6;
                    (eval(&xp) - eval(&xm)) / 2e-6
                })
                .collect();
            (f0, g)
        };
        best = best.min(minimize(fd, x0, 200).1);
    }
    Ok(best)
}
