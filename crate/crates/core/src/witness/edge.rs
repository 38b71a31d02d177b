//! Edge-state decompositions and witnesses that detect edge states.

use super::search::{check_operator, infimum_over_rank, SearchConfig};
use super::WitnessOperator;
use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{hermitian_eigen, pinv_hermitian, takagi_canonical, youla_canonical, CMatrix, Tolerances};
use crate::mixed::DensityMatrix;
use crate::pure::{two_particle_rank_below, PureState, RankClaim};

/// Range-membership residual above which a vector is rejected.
pub const RANGE_SLACK: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct Subtraction {
    /// `1 / ⟨ψ|ρ⁺|ψ⟩`, the largest weight keeping the remainder positive.
    pub lambda_max: f64,
    /// `(ρ - λ|ψ⟩⟨ψ|) / (1 - λ)`; `None` when `ρ` is the projector itself.
    pub remainder: Option<DensityMatrix>,
}

fn range_projector(rho: &DensityMatrix, tol: &Tolerances) -> CMatrix {
    let n = rho.space().dimension();
    CMatrix::identity(n, n) - rho.kernel_projector(tol)
}

/// Removes as much of `|ψ⟩⟨ψ|` from `ρ` as positivity allows.
pub fn subtract_pure_projector(rho: &DensityMatrix, psi: &PureState, tol: &Tolerances) -> Result<Subtraction> {
    if rho.space() != psi.space() {
        return Err(Error::SpaceMismatch);
    }
    let psi = psi.normalized()?;
    let a = psi.amplitudes();
    let outside = a - range_projector(rho, tol) * a;
    let residual = outside.norm();
    if residual > RANGE_SLACK {
        return Err(Error::NotInRange(residual));
    }
    let inv = pinv_hermitian(rho.matrix(), tol.rank_rel);
    let lambda = (1.0 / a.dotc(&(&inv * a)).re).min(1.0);
    if lambda >= 1.0 - 1e-12 {
        return Ok(Subtraction { lambda_max: 1.0, remainder: None });
    }
    let m = (rho.matrix() - (a * a.adjoint()).scale(lambda)).unscale(1.0 - lambda);
    // The kernel direction of ρ⁺ψ is exactly zero in exact arithmetic.
    let (vals, vecs) = hermitian_eigen(&m);
    let n = m.nrows();
    let mut clean = CMatrix::zeros(n, n);
    for (i, &l) in vals.iter().enumerate() {
        if l > 0.0 {
            let v = vecs.column(i);
            clean += (v * v.adjoint()).scale(l);
        }
    }
    let remainder = DensityMatrix::new(rho.space(), clean, tol)?;
    Ok(Subtraction { lambda_max: lambda, remainder: Some(remainder) })
}

/// `ρ = (1 - p) ρ_{k-1} + p δ`.
#[derive(Debug, Clone)]
pub struct EdgeDecomposition {
    /// Class `k - 1` part; `None` when nothing was subtracted.
    pub lower: Option<DensityMatrix>,
    /// Edge state; `None` when everything was subtracted.
    pub edge: Option<DensityMatrix>,
    pub p: f64,
    /// Subtracted vectors and their weights in `ρ`.
    pub log: Vec<(PureState, f64)>,
    /// `max |ρ - (1-p)ρ_{k-1} - pδ|`.
    pub residual: f64,
}

/// Closest rank `< k` state by truncating the canonical form.
fn truncate_rank(state: &PureState, k: usize, tol: &Tolerances) -> Result<PureState> {
    let w = state.coefficient_matrix()?;
    let n = w.nrows();
    let form = match state.space() {
        Space::Antisymmetric { .. } => youla_canonical(&w, tol)?,
        _ => takagi_canonical(&w, tol)?,
    };
    let mut kept = form.clone();
    kept.values.truncate(k - 1);
    let z = match state.space() {
        Space::Antisymmetric { .. } => kept.youla_matrix(n),
        _ => kept.takagi_matrix(n),
    };
    let u = &form.unitary;
    let m = u.adjoint() * z * u.conjugate();
    let v = PureState::matrix_vector(&state.space(), &m, tol)?;
    PureState::unnormalized(state.space(), v)?.normalized()
}

/// Alternating projections between `range(ρ)` and the rank `< k` states.
fn polish(psi: &PureState, range: &CMatrix, k: usize, tol: &Tolerances) -> Result<PureState> {
    let mut cur = psi.clone();
    for _ in 0..200 {
        let projected = PureState::unnormalized(cur.space(), range * cur.amplitudes())?.normalized()?;
        let next = truncate_rank(&projected, k, tol)?;
        let moved = (next.amplitudes() - cur.amplitudes()).norm();
        cur = next;
        if moved < 1e-15 {
            break;
        }
    }
    Ok(cur)
}

fn rank_below(psi: &PureState, k: usize, tol: &Tolerances) -> Result<bool> {
    Ok(two_particle_rank_below(psi, k, tol)?.claim == RankClaim::Below(k))
}

/// Greedy subtraction of rank `< k` vectors found in the range of `ρ`.
pub fn edge_state_decompose(rho: &DensityMatrix, k: usize, cfg: &SearchConfig, tol: &Tolerances) -> Result<EdgeDecomposition> {
    let space = rho.space();
    let mut current = Some(rho.clone());
    let mut mass = 1.0;
    let mut log: Vec<(PureState, f64)> = Vec::new();
    for step in 0..space.dimension() {
        let Some(cur) = current.as_ref() else { break };
        let kernel = cur.kernel_projector(tol);
        let range = range_projector(cur, tol);
        let step_cfg = SearchConfig { seed: cfg.seed.wrapping_add(step as u64), ..*cfg };
        let report = infimum_over_rank(&kernel, k, &space, &step_cfg, tol)?;
        let mut best: Option<(PureState, Subtraction)> = None;
        for (v, psi) in &report.minimizers {
            if *v > 1e-10 {
                continue;
            }
            let psi = polish(psi, &range, k, tol)?;
            if !rank_below(&psi, k, tol)? {
                continue;
            }
            let Ok(sub) = subtract_pure_projector(cur, &psi, tol) else { continue };
            if best.as_ref().is_none_or(|b| sub.lambda_max > b.1.lambda_max) {
                best = Some((psi, sub));
            }
        }
        let Some((psi, sub)) = best else { break };
        log.push((psi, mass * sub.lambda_max));
        mass *= 1.0 - sub.lambda_max;
        current = sub.remainder;
    }
    let n = space.dimension();
    let mut lower_m = CMatrix::zeros(n, n);
    for (psi, wgt) in &log {
        let a = psi.amplitudes();
        lower_m += (a * a.adjoint()).scale(*wgt);
    }
    let p = if current.is_some() { mass } else { 0.0 };
    let mut recon = lower_m.clone();
    if let Some(e) = &current {
        recon += e.matrix().scale(p);
    }
    let residual = crate::linalg::max_abs(&(recon - rho.matrix()));
    let lower = if log.is_empty() { None } else { Some(DensityMatrix::new(space, lower_m.unscale(1.0 - p), tol)?) };
    Ok(EdgeDecomposition { lower, edge: current, p, log, residual })
}

/// `W = P - (ε/c) C` with `P` the kernel projector of `δ`.
///
/// `ε` is the smallest `⟨ψ|P|ψ⟩` found over rank `< k` states and `c` the
/// largest eigenvalue of `C` (the identity when `C` is omitted).
pub fn witness_from_edge(
    delta: &DensityMatrix,
    k: usize,
    c_op: Option<&CMatrix>,
    cfg: &SearchConfig,
    tol: &Tolerances,
) -> Result<WitnessOperator> {
    let space = delta.space();
    let n = space.dimension();
    let c_op = c_op.cloned().unwrap_or_else(|| CMatrix::identity(n, n));
    check_operator(&c_op, &space, tol)?;
    let (c_eigs, _) = hermitian_eigen(&c_op);
    if c_eigs.last().copied().unwrap_or(0.0) < -crate::mixed::PSD_SLACK {
        return Err(Error::NotAState("C must be positive".into()));
    }
    let c = c_eigs[0];
    if (delta.matrix() * &c_op).trace().re <= 0.0 {
        return Err(Error::OutOfRange("Tr(δC) must be positive".into()));
    }
    let p = delta.kernel_projector(tol);
    let eps = infimum_over_rank(&p, k, &space, cfg, tol)?.value;
    if eps <= 1e-9 {
        return Err(Error::NotAnEdgeState(eps));
    }
    WitnessOperator::new(space, p - c_op.scale(eps / c), k, tol)
}
