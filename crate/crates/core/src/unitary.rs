//! Magic-basis representation of two-particle unitaries and the
//! factorization `U = V₁ U_d V₂` with `V₁, V₂` commuting with dualisation
//! and `U_d` diagonal in the magic basis.
//!
//! Operators commuting with dualisation are exactly those that are real
//! orthogonal (up to a global phase) in the magic basis. For the three
//! canonical systems this group coincides with the lifted single-particle
//! transformations, so `V₁, V₂` leave every concurrence unchanged.

use crate::error::{Error, Result};
use crate::linalg::{is_unitary, max_abs, real_symmetric_eigen, CMatrix, C64};
use crate::pure::CanonicalSystem;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tolerance for realness and orthogonality in the magic basis.
pub const ORTHO_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct KakFactors {
    pub system: CanonicalSystem,
    /// Computational basis.
    pub v1: CMatrix,
    /// Computational basis.
    pub ud: CMatrix,
    /// Computational basis.
    pub v2: CMatrix,
    /// `U_d = diag(e^{iφ_j})` in the magic basis.
    pub phases: Vec<f64>,
    /// `max |V₁ U_d V₂ - U|`.
    pub residual: f64,
}

fn check_dim(op: &CMatrix, sys: CanonicalSystem) -> Result<()> {
    let n = sys.dimension();
    if op.nrows() != n || op.ncols() != n {
        return Err(Error::UnsupportedSystem(format!("{}x{} operator for {sys:?}", op.nrows(), op.ncols())));
    }
    Ok(())
}

/// `Q† op Q` with `Q` the magic basis.
pub fn to_magic_basis(op: &CMatrix, sys: CanonicalSystem) -> Result<CMatrix> {
    check_dim(op, sys)?;
    let q = sys.magic_basis();
    Ok(q.adjoint() * op * q)
}

/// `Q op Q†`, inverse of [`to_magic_basis`].
pub fn from_magic_basis(op: &CMatrix, sys: CanonicalSystem) -> Result<CMatrix> {
    check_dim(op, sys)?;
    let q = sys.magic_basis();
    Ok(&q * op * q.adjoint())
}

/// Linear part of dualisation in magic coordinates: `D α = L α*`.
///
/// `L = Q† M Q*`, which is the identity.
pub fn dualisation_in_magic_basis(sys: CanonicalSystem) -> CMatrix {
    let q = sys.magic_basis();
    q.adjoint() * sys.dual_matrix() * q.conjugate()
}

/// Removes the phase that makes the largest entry real and positive.
fn dephase(m: &CMatrix) -> CMatrix {
    let big = m.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(C64::from(1.0));
    let phase = if big.norm() > 0.0 { big.conj() / big.norm() } else { C64::from(1.0) };
    m * phase
}

/// Whether `U D U† = D`, i.e. `U` is real orthogonal in the magic basis up to a global phase.
pub fn is_dualisation_invariant(u: &CMatrix, sys: CanonicalSystem) -> Result<bool> {
    let m = dephase(&to_magic_basis(u, sys)?);
    let imag = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(imag <= ORTHO_TOL && is_unitary(&m, ORTHO_TOL))
}

/// Real orthogonal `O` with `Oᵀ M O` diagonal for a complex symmetric unitary `M`.
///
/// `Re M` and `Im M` commute, so a generic real combination of the two has
/// the common eigenbasis; a few random combinations are tried before giving up.
fn simultaneous_orthogonal(m: &CMatrix) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let re = DMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)].re + m[(j, i)].re));
    let im = DMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)].im + m[(j, i)].im));
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b616b);
    let mut worst = f64::INFINITY;
    for _ in 0..16 {
        let t: f64 = rng.random_range(0.5..2.0);
        let (_, o) = real_symmetric_eigen(&(&re + &im * t));
        let oc = o.map(C64::from);
        let diag = oc.transpose() * m * &oc;
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| diag[(i, j)].norm())
            .fold(0.0, f64::max);
        if off <= 1e-10 {
            return Ok(o);
        }
        worst = worst.min(off);
    }
    Err(Error::NumericalFailure(format!("could not diagonalize U Uᵀ by a real orthogonal matrix (off-diagonal {worst:e})")))
}

/// `U = V₁ U_d V₂` with `det V₁ = det V₂ = 1` in the magic basis.
pub fn kak_decompose(u: &CMatrix, sys: CanonicalSystem) -> Result<KakFactors> {
    check_dim(u, sys)?;
    if !is_unitary(u, 1e-8) {
        return Err(Error::NumericalFailure("input is not unitary".into()));
    }
    let n = sys.dimension();
    let um = to_magic_basis(u, sys)?;
    let msym = &um * um.transpose();
    let mut o = simultaneous_orthogonal(&msym)?;
    if o.determinant() < 0.0 {
        o.column_mut(0).neg_mut();
    }
    let oc = o.map(C64::from);
    let diag = oc.transpose() * &msym * &oc;
    let mut phases: Vec<f64> = (0..n).map(|j| diag[(j, j)].arg() / 2.0).collect();
    let ud_m = |ph: &[f64]| CMatrix::from_fn(n, n, |i, j| if i == j { C64::from_polar(1.0, ph[i]) } else { C64::from(0.0) });
    let mut v2m = ud_m(&phases).adjoint() * oc.transpose() * &um;
    // V₂ is real up to rounding; a negative determinant moves a sign into U_d.
    let det = v2m.determinant();
    if det.re < 0.0 {
        v2m.row_mut(0).neg_mut();
        phases[0] += std::f64::consts::PI;
    }
    let v2m = v2m.map(|z| C64::from(z.re));
    let ud = from_magic_basis(&ud_m(&phases), sys)?;
    let v1 = from_magic_basis(&oc, sys)?;
    let v2 = from_magic_basis(&v2m, sys)?;
    let residual = max_abs(&(&v1 * &ud * &v2 - u));
    Ok(KakFactors { system: sys, v1, ud, v2, phases, residual })
}

/// `(dim H, free phases, dim G)` with `H = SO(n)` and `G = SU(n)`.
pub fn dimension_count(sys: CanonicalSystem) -> (usize, usize, usize) {
    let n = sys.dimension();
    (n * (n - 1) / 2, n - 1, n * n - 1)
}
