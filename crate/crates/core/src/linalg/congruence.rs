//! Unitary congruence canonical forms.
//!
//! Both routines deflate one block at a time: the dominant eigenvector of
//! `m m^dag` fixes the next column(s) of the transformation, the block is
//! subtracted and the loop continues until the remainder is below
//! `rank_rel` times the largest value.

use super::{
    antisymmetry_defect, complete_unitary, hermitian_eigen, max_abs, singular_values, symmetry_defect,
    CMatrix, CVector, Tolerances, C64,
};
use crate::error::{Error, Result};

/// `U m U^T = canonical(values)`.
#[derive(Debug, Clone)]
pub struct CongruenceForm {
    /// Nonzero canonical values, descending.
    pub values: Vec<f64>,
    pub unitary: CMatrix,
    /// `max |U m U^T - canonical|`.
    pub residual: f64,
}

impl CongruenceForm {
    /// Block-diagonal antisymmetric canonical matrix with `z_i` at `(2i, 2i+1)`.
    pub fn youla_matrix(&self, n: usize) -> CMatrix {
        let mut out = CMatrix::zeros(n, n);
        for (i, &z) in self.values.iter().enumerate() {
            out[(2 * i, 2 * i + 1)] = C64::from(z);
            out[(2 * i + 1, 2 * i)] = C64::from(-z);
        }
        out
    }

    /// Diagonal canonical matrix with `z_i` at `(i, i)`.
    pub fn takagi_matrix(&self, n: usize) -> CMatrix {
        let mut out = CMatrix::zeros(n, n);
        for (i, &z) in self.values.iter().enumerate() {
            out[(i, i)] = C64::from(z);
        }
        out
    }
}

fn orthogonalize(v: &mut CVector, against: &[CVector]) {
    for _ in 0..2 {
        for q in against {
            let p = q.dotc(v);
            *v -= q * p;
        }
    }
}

fn assemble(cols: &[CVector], n: usize) -> CMatrix {
    let q = if cols.is_empty() { CMatrix::zeros(n, 0) } else { CMatrix::from_columns(cols) };
    // U = V^dag, rows of U are the conjugated columns of V.
    complete_unitary(&q).adjoint()
}

/// Canonical form of a complex antisymmetric matrix under `w -> U w U^T`.
pub fn youla_canonical(w: &CMatrix, tol: &Tolerances) -> Result<CongruenceForm> {
    if !w.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", w.nrows(), w.ncols())));
    }
    let defect = antisymmetry_defect(w);
    if defect > tol.sym {
        return Err(Error::NotAntisymmetric(defect));
    }
    let n = w.nrows();
    let w = (w - w.transpose()).scale(0.5);
    let top = singular_values(&w).first().copied().unwrap_or(0.0);
    let mut rest = w.clone();
    let mut cols: Vec<CVector> = Vec::new();
    while cols.len() + 2 <= n && top > 0.0 {
        let (vals, vecs) = hermitian_eigen(&(&rest * rest.adjoint()));
        let z = vals[0].max(0.0).sqrt();
        if z <= tol.rank_rel * top {
            break;
        }
        let mut x: CVector = vecs.column(0).into_owned();
        orthogonalize(&mut x, &cols);
        x.normalize_mut();
        let mut y: CVector = -(&rest * x.conjugate());
        orthogonalize(&mut y, &cols);
        orthogonalize(&mut y, std::slice::from_ref(&x));
        let yn = y.norm();
        if yn <= tol.rank_rel * top {
            break;
        }
        y.unscale_mut(yn);
        let zz = (x.adjoint() * &rest * y.conjugate())[(0, 0)];
        rest -= (&x * y.transpose() - &y * x.transpose()) * zz;
        cols.push(x);
        cols.push(y);
    }
    let u = assemble(&cols, n);
    let b = &u * &w * u.transpose();
    let values: Vec<f64> = (0..cols.len() / 2).map(|i| b[(2 * i, 2 * i + 1)].re).collect();
    let mut form = CongruenceForm { values, unitary: u, residual: 0.0 };
    form.residual = max_abs(&(b - form.youla_matrix(n)));
    if form.residual > tol.recon.max(tol.recon * top) {
        return Err(Error::NumericalFailure(format!("Youla residual {:e}", form.residual)));
    }
    Ok(form)
}

/// Canonical form of a complex symmetric matrix under `v -> U v U^T`.
pub fn takagi_canonical(v: &CMatrix, tol: &Tolerances) -> Result<CongruenceForm> {
    if !v.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", v.nrows(), v.ncols())));
    }
    let defect = symmetry_defect(v);
    if defect > tol.sym {
        return Err(Error::NotSymmetric(defect));
    }
    let n = v.nrows();
    let v = (v + v.transpose()).scale(0.5);
    let top = singular_values(&v).first().copied().unwrap_or(0.0);
    let mut rest = v.clone();
    let mut cols: Vec<CVector> = Vec::new();
    while cols.len() < n && top > 0.0 {
        let (vals, vecs) = hermitian_eigen(&(&rest * rest.adjoint()));
        let z = vals[0].max(0.0).sqrt();
        if z <= tol.rank_rel * top {
            break;
        }
        let x: CVector = vecs.column(0).into_owned();
        let u: CVector = (&rest * x.conjugate()).unscale(z);
        // y with rest * conj(y) = z y: either x + u or i (x - u) is nonzero.
        let plus = &x + &u;
        let mut y = if plus.norm() >= std::f64::consts::SQRT_2 {
            plus
        } else {
            (&x - &u) * C64::i()
        };
        orthogonalize(&mut y, &cols);
        y.normalize_mut();
        let zz = (y.adjoint() * &rest * y.conjugate())[(0, 0)];
        rest -= (&y * y.transpose()) * zz;
        cols.push(y);
    }
    let u = assemble(&cols, n);
    let b = &u * &v * u.transpose();
    let values: Vec<f64> = (0..cols.len()).map(|i| b[(i, i)].re).collect();
    let mut form = CongruenceForm { values, unitary: u, residual: 0.0 };
    form.residual = max_abs(&(b - form.takagi_matrix(n)));
    if form.residual > tol.recon.max(tol.recon * top) {
        return Err(Error::NumericalFailure(format!("Takagi residual {:e}", form.residual)));
    }
    Ok(form)
}
