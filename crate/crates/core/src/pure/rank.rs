//! Slater-rank criteria.
//!
//! Two-particle states are tested through ε-contractions of their
//! coefficient matrix. States of three or more particles are reduced one
//! particle at a time with `R_a` (contraction with a single-particle vector)
//! until the two-particle test applies; an `N`-particle state has Slater rank
//! one iff every reduction is rank one or zero.

use super::PureState;
use crate::error::{Error, Result};
use crate::fock::{occupations, Space};
use crate::linalg::{
    factorial, random, singular_values, CMatrix, CVector, EpsilonContraction, Statistics, Tolerances, C64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankClaim {
    RankOne,
    /// Rank strictly below the threshold.
    Below(usize),
    /// Rank at least the threshold.
    AtLeast(usize),
}

#[derive(Debug, Clone)]
pub struct ProbeChain {
    /// Probe vectors applied in order, from `N` particles down to two.
    pub probes: Vec<CVector>,
    /// Largest contraction of the final two-particle state, relative to its scale.
    pub witness: f64,
}

#[derive(Debug, Clone)]
pub enum Certificate {
    /// Largest `|contraction|`, where it occurred and the zero threshold used.
    Contractions { max_abs: f64, at: Vec<usize>, threshold: f64 },
    /// Violating reductions; deterministic probes come first in probe order.
    Probes { violations: Vec<ProbeChain>, probes_tried: usize },
}

#[derive(Debug, Clone)]
pub struct RankVerdict {
    pub claim: RankClaim,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy)]
pub struct ProbeConfig {
    pub n_random: usize,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { n_random: 32, seed: 0 }
    }
}

fn contraction_verdict(m: &CMatrix, stat: Statistics, n: usize, tol: &Tolerances) -> Result<RankVerdict> {
    let d = m.nrows();
    let contracted = match stat {
        Statistics::Fermion => 2 * n,
        Statistics::Boson => n,
    };
    if contracted > d {
        // Rank below n is automatic when the single-particle space is too small.
        return Ok(RankVerdict {
            claim: RankClaim::Below(n),
            certificate: Certificate::Contractions { max_abs: 0.0, at: vec![], threshold: 0.0 },
        });
    }
    let values = EpsilonContraction::power(stat, m, n, d - contracted).evaluate()?;
    let sigma = singular_values(m).first().copied().unwrap_or(0.0);
    let scale = match stat {
        Statistics::Fermion => 2f64.powi(n as i32) * factorial(n) * sigma.powi(n as i32),
        Statistics::Boson => factorial(n) * sigma.powi(n as i32),
    };
    let threshold = tol.rank_rel * scale;
    let (at, max_abs) = values
        .into_iter()
        .map(|(a, v)| (a, v.norm()))
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap_or((vec![], 0.0));
    let claim = if max_abs <= threshold { RankClaim::Below(n) } else { RankClaim::AtLeast(n) };
    Ok(RankVerdict { claim, certificate: Certificate::Contractions { max_abs, at, threshold } })
}

/// Any `d`, any two-particle state; used by the recursion.
pub(crate) fn two_particle_rank_below(state: &PureState, n: usize, tol: &Tolerances) -> Result<RankVerdict> {
    let stat = state
        .space()
        .statistics()
        .filter(|_| state.particles() == 2)
        .ok_or_else(|| Error::WrongKind("two identical particles required".into()))?;
    contraction_verdict(&state.coefficient_matrix()?, stat, n, tol)
}

/// Whether a two-fermion state has Slater rank below `n`.
pub fn two_fermion_rank_below(state: &PureState, n: usize, tol: &Tolerances) -> Result<RankVerdict> {
    let Space::Antisymmetric { particles: 2, dim } = state.space() else {
        return Err(Error::WrongKind("two fermions required".into()));
    };
    if dim % 2 == 1 {
        return Err(Error::DimensionNotEven(dim));
    }
    if n == 0 || n > dim / 2 {
        return Err(Error::ThresholdOutOfRange(n as f64));
    }
    two_particle_rank_below(state, n, tol)
}

/// Whether a two-boson state has Slater rank below `n`.
pub fn two_boson_rank_below(state: &PureState, n: usize, tol: &Tolerances) -> Result<RankVerdict> {
    let Space::Symmetric { particles: 2, dim } = state.space() else {
        return Err(Error::WrongKind("two bosons required".into()));
    };
    if n == 0 || n > dim {
        return Err(Error::ThresholdOutOfRange(n as f64));
    }
    two_particle_rank_below(state, n, tol)
}

/// `R_a`: contracts the last tensor index with `a`, giving `N - 1` particles.
///
/// In tensor form `ŵ_{i_1…i_{N-1}} = N Σ_k w_{i_1…i_{N-1} k} a_k`; the
/// result is not renormalized.
pub fn project_reduce(state: &PureState, a: &CVector) -> Result<PureState> {
    let space = state.space();
    let d = space.single_particle_dim();
    let n = state.particles();
    if space.statistics().is_none() || n < 2 {
        return Err(Error::WrongKind("reduction needs at least two identical particles".into()));
    }
    if a.len() != d {
        return Err(Error::DimensionMismatch(format!("probe of length {} for d = {d}", a.len())));
    }
    let target = space.with_particles(n - 1);
    let index = space.index_map();
    let fermion = matches!(space, Space::Antisymmetric { .. });
    let amps = CVector::from_iterator(
        target.dimension(),
        target.basis().iter().map(|s| {
            let mut acc = C64::from(0.0);
            for k in 0..d {
                if a[k] == C64::from(0.0) {
                    continue;
                }
                if fermion {
                    if s.contains(&k) {
                        continue;
                    }
                    let above = s.iter().filter(|&&x| x > k).count();
                    let sign = if above % 2 == 0 { 1.0 } else { -1.0 };
                    let mut t = s.clone();
                    t.push(k);
                    t.sort_unstable();
                    acc += state.amplitudes()[index[&t]] * a[k] * sign;
                } else {
                    let nk = occupations(s, d)[k] as f64;
                    let mut t = s.clone();
                    t.push(k);
                    t.sort_unstable();
                    acc += state.amplitudes()[index[&t]] * a[k] * (nk + 1.0).sqrt();
                }
            }
            acc
        }),
    );
    PureState::unnormalized(target, amps)
}

fn probes(d: usize, n_random: usize, seed: u64) -> (Vec<CVector>, usize) {
    let mut out = Vec::with_capacity(d + d * d / 2 + n_random);
    let unit = |i: usize| {
        let mut v = CVector::zeros(d);
        v[i] = C64::from(1.0);
        v
    };
    for i in 0..d {
        out.push(unit(i));
    }
    for i in 0..d {
        for j in i + 1..d {
            out.push(unit(i) + unit(j));
        }
    }
    let deterministic = out.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_random {
        out.push(random::gaussian_vector(d, &mut rng));
    }
    (out, deterministic)
}

/// Chain of probes exposing rank ≥ 2, or `None` if every probe passes.
fn find_violation(state: &PureState, cfg: &ProbeConfig, depth: u64, tol: &Tolerances) -> Result<Option<ProbeChain>> {
    if state.particles() == 2 {
        let v = two_particle_rank_below(state, 2, tol)?;
        return Ok(match (v.claim, v.certificate) {
            (RankClaim::AtLeast(_), Certificate::Contractions { max_abs, threshold, .. }) => {
                Some(ProbeChain { probes: vec![], witness: max_abs / threshold.max(f64::MIN_POSITIVE) })
            }
            _ => None,
        });
    }
    let (list, _) = probes(state.single_particle_dim(), cfg.n_random, cfg.seed.wrapping_add(depth));
    for a in list {
        if let Some(mut chain) = reduce_and_check(state, &a, cfg, depth + 1, tol)? {
            chain.probes.insert(0, a);
            return Ok(Some(chain));
        }
    }
    Ok(None)
}

fn reduce_and_check(
    state: &PureState,
    a: &CVector,
    cfg: &ProbeConfig,
    depth: u64,
    tol: &Tolerances,
) -> Result<Option<ProbeChain>> {
    let reduced = project_reduce(state, a)?;
    if reduced.norm() <= tol.rank_rel * state.norm() * a.norm() {
        return Ok(None);
    }
    find_violation(&reduced, cfg, depth, tol)
}

/// Slater-rank-one test for `N ≥ 2` identical particles.
///
/// `RankOne` is certified up to probe coverage; `AtLeast(2)` always comes
/// with an explicit violating chain.
pub fn multiparticle_rank_one(state: &PureState, cfg: &ProbeConfig, tol: &Tolerances) -> Result<RankVerdict> {
    if state.space().statistics().is_none() || state.particles() < 2 {
        return Err(Error::WrongKind("at least two identical particles required".into()));
    }
    if state.particles() == 2 {
        let v = two_particle_rank_below(state, 2, tol)?;
        let claim = if v.claim == RankClaim::Below(2) { RankClaim::RankOne } else { RankClaim::AtLeast(2) };
        return Ok(RankVerdict { claim, certificate: v.certificate });
    }
    let (list, deterministic) = probes(state.single_particle_dim(), cfg.n_random, cfg.seed);
    let results: Vec<Option<ProbeChain>> = list
        .par_iter()
        .map(|a| {
            reduce_and_check(state, a, cfg, 1, tol).map(|r| {
                r.map(|mut chain| {
                    chain.probes.insert(0, a.clone());
                    chain
                })
            })
        })
        .collect::<Result<_>>()?;
    let mut violations: Vec<ProbeChain> = results[..deterministic].iter().flatten().cloned().collect();
    if violations.is_empty() {
        violations.extend(results[deterministic..].iter().flatten().take(1).cloned());
    }
    let claim = if violations.is_empty() { RankClaim::RankOne } else { RankClaim::AtLeast(2) };
    Ok(RankVerdict { claim, certificate: Certificate::Probes { violations, probes_tried: list.len() } })
}

impl RankVerdict {
    /// Re-evaluates the certificate against `state`.
    pub fn certificate_holds(&self, state: &PureState, tol: &Tolerances) -> Result<bool> {
        match (&self.claim, &self.certificate) {
            (RankClaim::Below(_) | RankClaim::RankOne, Certificate::Contractions { max_abs, threshold, .. }) => {
                Ok(max_abs <= threshold)
            }
            (RankClaim::AtLeast(_), Certificate::Contractions { max_abs, threshold, .. }) => Ok(max_abs > threshold),
            (RankClaim::RankOne, Certificate::Probes { violations, .. }) => Ok(violations.is_empty()),
            (RankClaim::AtLeast(_), Certificate::Probes { violations, .. }) => {
                let Some(chain) = violations.first() else { return Ok(false) };
                let mut s = state.clone();
                for a in &chain.probes {
                    s = project_reduce(&s, a)?;
                }
                Ok(two_particle_rank_below(&s, 2, tol)?.claim == RankClaim::AtLeast(2))
            }
            _ => Ok(false),
        }
    }
}
