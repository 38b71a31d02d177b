//! Slater witnesses for two fermions or two bosons.
//!
//! A witness of class `k` is a Hermitian `W` with `⟨ψ|W|ψ⟩ ≥ 0` for every
//! pure state of Slater rank `< k`. Witness validity is only ever checked
//! numerically (sampling plus the rank-restricted search); a negative
//! value on a state is exact evidence that the state has class `≥ k`.

mod edge;
mod jamiolkowski;
mod optimize;
mod search;

pub use edge::{edge_state_decompose, subtract_pure_projector, witness_from_edge, EdgeDecomposition, Subtraction, RANGE_SLACK};
pub use jamiolkowski::{jamiolkowski_map_apply, lifted_operator};
pub use optimize::{witness_optimize, xe_criterion, OptimizedWitness};
pub use search::{infimum_over_rank, InfimumReport, SearchConfig};

use crate::error::{Error, Result};
use crate::fock::Space;
use crate::linalg::{c64, hermitian_eigen, CMatrix, Statistics, Tolerances};
use crate::mixed::DensityMatrix;
use crate::pure::PureState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use search::RankManifold;
use serde::Serialize;

/// Values below this count as detection.
pub const DETECTION_THRESHOLD: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessOperator {
    space: Space,
    matrix: CMatrix,
    slater_class: usize,
    epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessValue {
    pub value: f64,
    pub detected: bool,
}

/// Smallest `⟨ψ|W|ψ⟩` over a seeded batch of random rank `< k` states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BatteryReport {
    pub min: f64,
    pub samples: usize,
}

#[derive(Debug, Clone)]
pub struct CanonicalWitness {
    /// `W + ε 1 ≥ 0`.
    pub w_tilde: CMatrix,
    pub epsilon: f64,
    /// Smallest `⟨ψ|W̃|ψ⟩` found over rank `< k` states.
    pub infimum: f64,
    /// `ε ≤ infimum` up to `1e-8`.
    pub verified: bool,
}

impl WitnessOperator {
    /// Hermitian operator on a two-particle space, tagged with its class `k ≥ 2`.
    ///
    /// `epsilon` is set to `max(0, -λ_min(W))`.
    pub fn new(space: Space, matrix: CMatrix, slater_class: usize, tol: &Tolerances) -> Result<Self> {
        RankManifold::new(&space, slater_class)?;
        search::check_operator(&matrix, &space, tol)?;
        let matrix = (&matrix + matrix.adjoint()).scale(0.5);
        let (vals, _) = hermitian_eigen(&matrix);
        let epsilon = (-vals.last().copied().unwrap_or(0.0)).max(0.0);
        Ok(WitnessOperator { space, matrix, slater_class, epsilon })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn slater_class(&self) -> usize {
        self.slater_class
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `L W L†`.
    pub fn conjugate_by(&self, l: &CMatrix, tol: &Tolerances) -> Result<Self> {
        if l.nrows() != self.matrix.nrows() || l.ncols() != self.matrix.ncols() {
            return Err(Error::DimensionMismatch("conjugating operator".into()));
        }
        Self::new(self.space, l * &self.matrix * l.adjoint(), self.slater_class, tol)
    }

    /// `⟨ψ|W|ψ⟩` for a normalized copy of `ψ`.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        if psi.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        let a = psi.normalized()?.into_amplitudes();
        Ok(a.dotc(&(&self.matrix * &a)).re)
    }

    /// Checks `⟨ψ|W|ψ⟩` on `samples` random states of Slater rank `< k`.
    pub fn battery(&self, samples: usize, seed: u64) -> Result<BatteryReport> {
        let manifold = RankManifold::new(&self.space, self.slater_class)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut min = f64::INFINITY;
        for _ in 0..samples {
            let psi = manifold.state(&manifold.random_point(&mut rng))?;
            min = min.min(self.expectation(&psi)?);
        }
        Ok(BatteryReport { min, samples })
    }
}

/// `Tr(Wρ)`; detected when below [`DETECTION_THRESHOLD`].
pub fn witness_value(w: &WitnessOperator, rho: &DensityMatrix) -> Result<WitnessValue> {
    if w.space != rho.space() {
        return Err(Error::SpaceMismatch);
    }
    let value = (&w.matrix * rho.matrix()).trace().re;
    Ok(WitnessValue { value, detected: value < DETECTION_THRESHOLD })
}

/// `W = W̃ - ε 1` with `W̃ ≥ 0`, and a search-based check that `ε` does not
/// exceed the infimum of `W̃` over rank `< k` states.
pub fn canonical_witness_form(w: &WitnessOperator, cfg: &SearchConfig, tol: &Tolerances) -> Result<CanonicalWitness> {
    let n = w.matrix.nrows();
    let w_tilde = &w.matrix + CMatrix::identity(n, n).scale(w.epsilon);
    let infimum = infimum_over_rank(&w_tilde, w.slater_class, &w.space, cfg, tol)?.value;
    Ok(CanonicalWitness { w_tilde, epsilon: w.epsilon, infimum, verified: w.epsilon <= infimum + 1e-8 })
}

/// `(1/√K) Σ_i f†_{2i-1} f†_{2i} |0⟩` in `2K` modes, or `(1/√K) Σ_a |2_a⟩` in `K` modes.
pub fn maximally_correlated_state(big_k: usize, stat: Statistics) -> Result<PureState> {
    if big_k == 0 {
        return Err(Error::OutOfRange("K must be positive".into()));
    }
    let amp = c64(1.0 / (big_k as f64).sqrt(), 0.0);
    match stat {
        Statistics::Fermion => {
            let entries: Vec<_> = (0..big_k).map(|i| (vec![2 * i, 2 * i + 1], amp)).collect();
            PureState::from_entries(Space::fermions(2, 2 * big_k), &entries)
        }
        Statistics::Boson => {
            let entries: Vec<_> = (0..big_k).map(|a| (vec![a, a], amp)).collect();
            PureState::from_entries(Space::bosons(2, big_k), &entries)
        }
    }
}

/// `W = 1 - K/(k-1) 𝒫` with `𝒫` the projector onto [`maximally_correlated_state`].
pub fn optimal_witness_example(big_k: usize, k: usize, stat: Statistics) -> Result<WitnessOperator> {
    if k < 2 || k > big_k {
        return Err(Error::OutOfRange(format!("need 2 ≤ k ≤ K, got k = {k}, K = {big_k}")));
    }
    let psi = maximally_correlated_state(big_k, stat)?;
    let a = psi.amplitudes();
    let n = a.len();
    let w = CMatrix::identity(n, n) - (a * a.adjoint()).scale(big_k as f64 / (k - 1) as f64);
    WitnessOperator::new(psi.space(), w, k, &Tolerances::default())
}

/// `g†_1 g†_2 |0⟩` in four modes, a tangent state of the `K = k = 2`
/// fermionic example for every choice of phases `φ = [[φ11, φ12], [φ21, φ22]]`.
pub fn phase_family_state(phi: [[f64; 2]; 2]) -> Result<PureState> {
    let e = |t: f64| c64(t.cos(), t.sin());
    let g1 = [e(phi[0][0]), e(phi[0][1]), e(phi[1][0]), e(phi[1][1])];
    let g2 = [-e(-phi[0][1]), e(-phi[0][0]), -e(-phi[1][1]), e(-phi[1][0])];
    let mut entries = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            entries.push((vec![i, j], g1[i] * g2[j] - g1[j] * g2[i]));
        }
    }
    let space = Space::fermions(2, 4);
    let amps = PureState::entries_vector(&space, &entries)?;
    PureState::unnormalized(space, amps)?.normalized()
}
