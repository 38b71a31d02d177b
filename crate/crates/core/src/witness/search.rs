//! Minimization of `⟨ψ|A|ψ⟩` over two-particle states of Slater rank below `k`.
//!
//! Rank `< k` states are written as `w = X Yᵀ - Y Xᵀ` (fermions) or
//! `v = X Xᵀ` (bosons) with `X, Y ∈ C^{d x (k-1)}`; every such state has
//! the required rank and every state of that rank has this form. The
//! Rayleigh quotient is minimized with L-BFGS over the entries of `X, Y`.

use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{hermiticity_defect, random, CMatrix, CVector, Statistics, Tolerances, C64};
use crate::optim::minimize;
use crate::pure::PureState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub iters: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { restarts: 64, iters: 500, seed: 0 }
    }
}

/// Outcome of [`infimum_over_rank`].
#[derive(Debug, Clone)]
pub struct InfimumReport {
    /// Best value found; an upper bound on the infimum.
    pub value: f64,
    /// Final value of every restart, ascending.
    pub restart_values: Vec<f64>,
    /// Restarts that ended within `1e-8` of the best value.
    pub hits: usize,
    /// `(value, normalized local minimizer)` in restart order.
    pub minimizers: Vec<(f64, PureState)>,
}

impl InfimumReport {
    pub fn minimizer(&self) -> &PureState {
        &self.minimizers.iter().min_by(|a, b| a.0.total_cmp(&b.0)).expect("at least one restart").1
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RankManifold {
    stat: Statistics,
    d: usize,
    r: usize,
}

impl RankManifold {
    pub(crate) fn new(space: &Space, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::OutOfRange(format!("Slater class {k} must be at least 2")));
        }
        match *space {
            Space::Antisymmetric { particles: 2, dim } => Ok(RankManifold { stat: Statistics::Fermion, d: dim, r: k - 1 }),
            Space::Symmetric { particles: 2, dim } => Ok(RankManifold { stat: Statistics::Boson, d: dim, r: k - 1 }),
            other => Err(Error::UnsupportedSystem(format!("rank-restricted search on {other:?}"))),
        }
    }

    fn space(&self) -> Space {
        match self.stat {
            Statistics::Fermion => Space::fermions(2, self.d),
            Statistics::Boson => Space::bosons(2, self.d),
        }
    }

    fn blocks(&self) -> usize {
        match self.stat {
            Statistics::Fermion => 2,
            Statistics::Boson => 1,
        }
    }

    pub(crate) fn n_params(&self) -> usize {
        2 * self.blocks() * self.d * self.r
    }

    fn unpack(&self, x: &[f64]) -> Vec<CMatrix> {
        let n = self.d * self.r;
        (0..self.blocks())
            .map(|b| CMatrix::from_fn(self.d, self.r, |i, j| {
                let o = 2 * (b * n + i * self.r + j);
                C64::new(x[o], x[o + 1])
            }))
            .collect()
    }

    fn coefficient(&self, m: &[CMatrix]) -> CMatrix {
        match self.stat {
            Statistics::Fermion => {
                let xy = &m[0] * m[1].transpose();
                &xy - xy.transpose()
            }
            Statistics::Boson => &m[0] * m[0].transpose(),
        }
    }

    fn amplitudes(&self, w: &CMatrix) -> CVector {
        let d = self.d;
        let mut c = Vec::with_capacity(self.space().dimension());
        for i in 0..d {
            let start = if self.stat == Statistics::Fermion { i + 1 } else { i };
            for j in start..d {
                c.push(match self.stat {
                    Statistics::Fermion => w[(i, j)] * 2.0,
                    Statistics::Boson if i == j => w[(i, i)] * SQRT_2,
                    Statistics::Boson => w[(i, j)] * 2.0,
                });
            }
        }
        CVector::from_vec(c)
    }

    /// Normalized state for a parameter vector.
    pub(crate) fn state(&self, x: &[f64]) -> Result<PureState> {
        let c = self.amplitudes(&self.coefficient(&self.unpack(x)));
        PureState::unnormalized(self.space(), c)?.normalized()
    }

    pub(crate) fn random_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let n = self.n_params() / 2;
        let z = random::gaussian_vector(n, rng);
        z.iter().flat_map(|c| [c.re, c.im]).collect()
    }

    /// Rayleigh quotient `c†Ac / c†c` and its gradient in the real parameters.
    pub(crate) fn rayleigh(&self, a: &CMatrix, x: &[f64]) -> (f64, Vec<f64>) {
        let m = self.unpack(x);
        let c = self.amplitudes(&self.coefficient(&m));
        let nn = c.norm_squared();
        if nn < 1e-300 {
            return (f64::INFINITY, vec![0.0; x.len()]);
        }
        let ac = a * &c;
        let f = c.dotc(&ac).re / nn;
        // Euclidean gradient in c, as (∂/∂Re, ∂/∂Im) packed into one complex number.
        let gc = (ac - c.scale(f)).scale(2.0 / nn);
        let d = self.d;
        let mut gm = CMatrix::zeros(d, d);
        let mut k = 0;
        for i in 0..d {
            let start = if self.stat == Statistics::Fermion { i + 1 } else { i };
            for j in start..d {
                match self.stat {
                    Statistics::Fermion => {
                        gm[(i, j)] = gc[k];
                        gm[(j, i)] = -gc[k];
                    }
                    Statistics::Boson if i == j => gm[(i, i)] = gc[k] * SQRT_2,
                    Statistics::Boson => {
                        gm[(i, j)] = gc[k];
                        gm[(j, i)] = gc[k];
                    }
                }
                k += 1;
            }
        }
        let grads: Vec<CMatrix> = match self.stat {
            Statistics::Fermion => vec![(&gm * m[1].conjugate()) * C64::from(2.0), (&gm * m[0].conjugate()) * C64::from(-2.0)],
            Statistics::Boson => vec![(&gm * m[0].conjugate()) * C64::from(2.0)],
        };
        let mut g = Vec::with_capacity(x.len());
        for gb in &grads {
            for i in 0..d {
                for j in 0..self.r {
                    g.push(gb[(i, j)].re);
                    g.push(gb[(i, j)].im);
                }
            }
        }
        (f, g)
    }
}

pub(crate) fn check_operator(op: &CMatrix, space: &Space, tol: &Tolerances) -> Result<()> {
    let n = space.dimension();
    if op.nrows() != n || op.ncols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} operator for dimension {n}", op.nrows(), op.ncols())));
    }
    let defect = hermiticity_defect(op);
    if defect > tol.sym {
        return Err(Error::NotHermitian(defect));
    }
    Ok(())
}

/// Smallest `⟨ψ|op|ψ⟩` found over normalized two-particle states of Slater rank `< k`.
///
/// Non-convex: each restart starts from an independent seeded point, and
/// the restart values are reported so the spread can be judged.
pub fn infimum_over_rank(op: &CMatrix, k: usize, space: &Space, cfg: &SearchConfig, tol: &Tolerances) -> Result<InfimumReport> {
    let manifold = RankManifold::new(space, k)?;
    check_operator(op, space, tol)?;
    let a = (op + op.adjoint()).scale(0.5);
    let runs: Vec<(f64, Vec<f64>)> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let x0 = manifold.random_point(&mut rng);
            let (x, v) = minimize(|x| manifold.rayleigh(&a, x), x0, cfg.iters);
            (v, x)
        })
        .collect();
    let raw: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let minimizers = runs.iter().map(|r| Ok((r.0, manifold.state(&r.1)?))).collect::<Result<Vec<_>>>()?;
    let value = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let mut restart_values = raw.clone();
    restart_values.sort_by(f64::total_cmp);
    let hits = raw.iter().filter(|&&v| v - value <= 1e-8).count();
    Ok(InfimumReport { value, restart_values, hits, minimizers })
}
