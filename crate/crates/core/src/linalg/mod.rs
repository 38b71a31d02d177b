//! Dense complex kernels shared by every other module.
//!
//! Matrices are `nalgebra::DMatrix<Complex<f64>>`. All eigen-solvers here
//! return eigenvalues in descending order together with matching columns.

mod congruence;
mod epsilon;
mod pfaffian;
pub mod random;

pub use congruence::{takagi_canonical, youla_canonical, CongruenceForm};
pub use epsilon::{EpsilonContraction, Statistics};
pub use pfaffian::pfaffian;

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Numerical tolerances used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Symmetry and Hermiticity checks.
    pub sym: f64,
    /// Reconstruction residuals.
    pub recon: f64,
    /// Relative threshold for numerical rank.
    pub rank_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { sym: 1e-10, recon: 1e-9, rank_rel: 1e-8 }
    }
}

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn antisymmetry_defect(w: &CMatrix) -> f64 {
    max_abs(&(w + w.transpose()))
}

pub fn symmetry_defect(v: &CMatrix) -> f64 {
    max_abs(&(v - v.transpose()))
}

pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    max_abs(&(a - a.adjoint()))
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    if n == 0 {
        return (vec![], CMatrix::zeros(0, 0));
    }
    let sym = (a + a.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Eigen-decomposition of a real symmetric matrix, eigenvalues descending.
pub fn real_symmetric_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let sym = (a + a.transpose()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Singular values, descending.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return vec![];
    }
    let mut s: Vec<f64> = SVD::new(a.clone(), false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Thin SVD `a = U diag(s) V^dag` with singular values descending.
pub fn svd_sorted(a: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let svd = SVD::new(a.clone(), true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^dag");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let s = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u_s = CMatrix::from_fn(u.nrows(), k, |r, c| u[(r, order[c])]);
    let v_s = CMatrix::from_fn(v_t.ncols(), k, |r, c| v_t[(order[c], r)].conj());
    (u_s, s, v_s)
}

pub fn numerical_rank(a: &CMatrix, rel: f64) -> usize {
    let s = singular_values(a);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel * top).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the span of `cols` (columns), rank decided relative to the largest singular value.
pub fn orthonormal_span(cols: &CMatrix, rel: f64) -> CMatrix {
    if cols.ncols() == 0 {
        return CMatrix::zeros(cols.nrows(), 0);
    }
    let (u, s, _) = svd_sorted(cols);
    let top = s.first().copied().unwrap_or(0.0);
    let r = s.iter().filter(|&&x| top > 0.0 && x > rel * top).count();
    u.columns(0, r).into_owned()
}

/// Completes orthonormal columns `q` (n x k) to a unitary n x n matrix.
pub fn complete_unitary(q: &CMatrix) -> CMatrix {
    let n = q.nrows();
    let k = q.ncols();
    if k == n {
        return q.clone();
    }
    let proj = CMatrix::identity(n, n) - q * q.adjoint();
    let (_, vecs) = hermitian_eigen(&proj);
    let mut out = CMatrix::zeros(n, n);
    out.columns_mut(0, k).copy_from(q);
    out.columns_mut(k, n - k).copy_from(&vecs.columns(0, n - k));
    out
}

/// Projector onto span of orthonormal columns.
pub fn projector(q: &CMatrix) -> CMatrix {
    q * q.adjoint()
}

pub fn outer(a: &CVector, b: &CVector) -> CMatrix {
    a * b.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Frobenius distance between two matrices.
pub fn frob_dist(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    u.is_square() && max_abs(&(u.adjoint() * u - CMatrix::identity(u.nrows(), u.ncols()))) <= tol
}

/// Moore-Penrose inverse of a Hermitian PSD matrix, discarding eigenvalues below `rel * max`.
pub fn pinv_hermitian(a: &CMatrix, rel: f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(a);
    let top = vals.first().copied().unwrap_or(0.0).max(0.0);
    let n = a.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (i, &l) in vals.iter().enumerate() {
        if l > rel * top && l > 0.0 {
            let v = vecs.column(i);
            out += (v * v.adjoint()).scale(1.0 / l);
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
