//! Direct numerical minimization of the convex roof of the pure-state
//! concurrence, used to cross-check the closed form.
//!
//! A decomposition with `m` members is `|φ_k⟩ = Σ_j U_kj |Ψ_j⟩` for an
//! isometry `U` (`m x r`), and `Σ p_k C(φ_k) = Σ_k |(U τ Uᵀ)_kk|` with
//! `τ_ij = ⟨Ψ̃_i|Ψ_j⟩`. The absolute value is smoothed as
//! `√(|g|² + δ²)` and `δ` is lowered in stages; each stage runs
//! Riemannian gradient descent with Armijo backtracking and a polar
//! retraction.

use super::DensityMatrix;
use crate::error::Result;
use crate::linalg::{random, svd_sorted, CMatrix, Tolerances, C64};
use crate::pure::CanonicalSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub struct RoofConfig {
    pub n_starts: usize,
    pub n_iters: usize,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> Self {
        RoofConfig { n_starts: 12, n_iters: 1500, seed: 0 }
    }
}

fn objective(u: &CMatrix, tau: &CMatrix, delta: f64) -> (f64, CMatrix) {
    let tu = u * tau; // row k is (τ u_k)ᵀ
    let mut f = 0.0;
    let mut grad = CMatrix::zeros(u.nrows(), u.ncols());
    for k in 0..u.nrows() {
        let g: C64 = (0..u.ncols()).map(|j| u[(k, j)] * tu[(k, j)]).sum();
        let s = (g.norm_sqr() + delta * delta).sqrt();
        f += s;
        if s > 0.0 {
            let w = g / s * 2.0;
            for j in 0..u.ncols() {
                grad[(k, j)] = w * tu[(k, j)].conj();
            }
        }
    }
    (f, grad)
}

fn exact(u: &CMatrix, tau: &CMatrix) -> f64 {
    objective(u, tau, 0.0).0
}

fn polar(a: &CMatrix) -> CMatrix {
    let (w, _, v) = svd_sorted(a);
    w * v.adjoint()
}

fn descend(mut u: CMatrix, tau: &CMatrix, iters: usize) -> CMatrix {
    let stages = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-8];
    let per = (iters / stages.len()).max(1);
    for &delta in &stages {
        let mut step = 1.0;
        let (mut f, mut g) = objective(&u, tau, delta);
        for _ in 0..per {
            let ug = u.adjoint() * &g;
            let xi = &g - &u * (&ug + ug.adjoint()).scale(0.5);
            let xn = xi.norm_squared();
            if xn < 1e-24 {
                break;
            }
            step *= 2.0;
            let mut accepted = false;
            while step > 1e-12 {
                let cand = polar(&(&u - &xi * C64::from(step)));
                let (fc, gc) = objective(&cand, tau, delta);
                if fc <= f - 1e-4 * step * xn {
                    u = cand;
                    f = fc;
                    g = gc;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
    }
    u
}

/// Best `Σ p_k C(φ_k)` found; an upper bound on the concurrence of formation.
pub fn convex_roof_oracle(rho: &DensityMatrix, cfg: &RoofConfig, tol: &Tolerances) -> Result<f64> {
    let sys = CanonicalSystem::of(&rho.space())?;
    let phi = rho.spectrum(tol).vectors;
    let r = phi.ncols();
    let tau = phi.transpose() * sys.dual_matrix() * &phi;
    let m = (r * r).min(16).max(r);
    let mut starts: Vec<CMatrix> = vec![CMatrix::identity(m, r)];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 1..cfg.n_starts.max(1) {
        starts.push(random::random_isometry(m, r, &mut rng));
    }
    let best = starts
        .into_par_iter()
        .map(|u0| exact(&descend(u0, &tau, cfg.n_iters), &tau))
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}
