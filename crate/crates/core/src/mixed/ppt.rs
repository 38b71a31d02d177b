//! Partial transposition and PPT-based separability for bosonic states.

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::fock::{embedding, lift_single_particle, Space};
use crate::linalg::{
    hermitian_eigen, max_abs, pinv_hermitian, random, CMatrix, CVector, Tolerances, C64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Partial transpose of factor `factor` of an operator on `⊗_k C^{dims[k]}`.
pub fn partial_transpose_dims(m: &CMatrix, dims: &[usize], factor: usize) -> Result<CMatrix> {
    let total: usize = dims.iter().product();
    if m.nrows() != total || m.ncols() != total {
        return Err(Error::DimensionMismatch(format!("{}x{} vs product of {dims:?}", m.nrows(), m.ncols())));
    }
    if factor >= dims.len() {
        return Err(Error::OutOfRange(format!("factor {factor} of {} factors", dims.len())));
    }
    let stride: usize = dims[factor + 1..].iter().product();
    let d = dims[factor];
    let digit = |i: usize| (i / stride) % d;
    Ok(CMatrix::from_fn(total, total, |i, j| {
        let (a, b) = (digit(i), digit(j));
        let i2 = i - a * stride + b * stride;
        let j2 = j - b * stride + a * stride;
        m[(i2, j2)]
    }))
}

fn tensor_dims(space: &Space) -> Vec<usize> {
    match *space {
        Space::Bipartite { dim_a, dim_b } => vec![dim_a, dim_b],
        _ => vec![space.single_particle_dim(); space.particles()],
    }
}

/// `ρ^{T_cut}` on the full tensor space; sector states are embedded first.
pub fn partial_transpose(rho: &DensityMatrix, cut: usize) -> Result<CMatrix> {
    let e = embedding(&rho.space());
    let full = &e * rho.matrix() * e.adjoint();
    partial_transpose_dims(&full, &tensor_dims(&rho.space()), cut)
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigen(m).0.last().copied().unwrap_or(0.0)
}

/// Smallest eigenvalue of the partial transpose is at least `-tol`.
pub fn is_ppt(rho: &DensityMatrix, cut: usize, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(&partial_transpose(rho, cut)?) >= -tol)
}

/// Product vectors `|e,e⟩` in the range of a rank-4 state on two bosons in three modes.
#[derive(Debug, Clone)]
pub struct ProductVectorSolve {
    /// Normalized single-particle vectors of the affine solutions.
    pub vectors: Vec<CVector>,
    /// Solutions lost at infinity of the chart `e = (1, z_1, z_2)`.
    pub missing_at_infinity: usize,
    /// `‖P_ker |e,e⟩‖` for each vector.
    pub residuals: Vec<f64>,
}

type Poly = Vec<C64>;

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![C64::from(0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn psub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() - b.get(i).copied().unwrap_or_default())
        .collect()
}

fn peval(p: &Poly, x: C64) -> C64 {
    p.iter().rev().fold(C64::from(0.0), |acc, c| acc * x + c)
}

fn roots(p: &Poly) -> Result<Vec<C64>> {
    let n = p.len() - 1;
    if n == 0 {
        return Ok(vec![]);
    }
    let lead = p[n];
    let mut comp = CMatrix::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = C64::from(1.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -p[i] / lead;
    }
    Ok(comp
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::NumericalFailure("companion matrix eigenvalues".into()))?
        .iter()
        .copied()
        .collect())
}

fn sym_index(i: usize, k: usize) -> usize {
    // Basis order 00, 01, 02, 11, 12, 22.
    let (i, k) = if i <= k { (i, k) } else { (k, i) };
    [[0, 1, 2], [1, 3, 4], [2, 4, 5]][i][k]
}

fn quadratic_form(phi: &CVector) -> [[C64; 3]; 3] {
    let mut q = [[C64::from(0.0); 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            let z = phi[sym_index(i, k)].conj();
            q[i][k] = if i == k { z } else { z * std::f64::consts::FRAC_1_SQRT_2 };
        }
    }
    q
}

fn qeval(q: &[[C64; 3]; 3], e: &[C64; 3]) -> C64 {
    let mut s = C64::from(0.0);
    for i in 0..3 {
        for k in 0..3 {
            s += e[i] * q[i][k] * e[k];
        }
    }
    s
}

fn qgrad(q: &[[C64; 3]; 3], e: &[C64; 3], j: usize) -> C64 {
    (0..3).map(|k| q[j][k] * e[k]).sum::<C64>() * 2.0
}

/// `|e,e⟩` in sector coordinates.
pub(crate) fn symmetric_square(e: &CVector) -> CVector {
    let d = e.len();
    let basis = Space::bosons(2, d).basis();
    CVector::from_iterator(
        basis.len(),
        basis.iter().map(|t| {
            if t[0] == t[1] {
                e[t[0]] * e[t[0]]
            } else {
                e[t[0]] * e[t[1]] * std::f64::consts::SQRT_2
            }
        }),
    )
}

fn polish(qs: &[[[C64; 3]; 3]; 2], mut z: [C64; 2]) -> [C64; 2] {
    let resid = |z: &[C64; 2]| {
        let e = [C64::from(1.0), z[0], z[1]];
        [qeval(&qs[0], &e), qeval(&qs[1], &e)]
    };
    let norm = |f: &[C64; 2]| (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
    for _ in 0..20 {
        let e = [C64::from(1.0), z[0], z[1]];
        let f = resid(&z);
        let fn0 = norm(&f);
        if fn0 < 1e-15 {
            break;
        }
        let j = [[qgrad(&qs[0], &e, 1), qgrad(&qs[0], &e, 2)], [qgrad(&qs[1], &e, 1), qgrad(&qs[1], &e, 2)]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm() < 1e-300 {
            break;
        }
        let step = [(j[1][1] * f[0] - j[0][1] * f[1]) / det, (j[0][0] * f[1] - j[1][0] * f[0]) / det];
        let mut t = 1.0;
        loop {
            let cand = [z[0] - step[0] * t, z[1] - step[1] * t];
            if norm(&resid(&cand)) < fn0 {
                z = cand;
                break;
            }
            t *= 0.5;
            if t < 1e-4 {
                return z;
            }
        }
    }
    z
}

/// All affine solutions of `⟨φ_j|e,e⟩ = 0` for the two kernel vectors.
pub fn product_vectors_affine(rho: &DensityMatrix, tol: &Tolerances) -> Result<ProductVectorSolve> {
    if rho.space() != Space::bosons(2, 3) {
        return Err(Error::UnsupportedSystem(format!("{:?}", rho.space())));
    }
    let (vals, vecs) = hermitian_eigen(rho.matrix());
    let top = vals[0];
    let rank = vals.iter().filter(|&&l| l > tol.rank_rel * top).count();
    if rank != 4 {
        return Err(Error::OutOfRange(format!("rank {rank}, expected 4")));
    }
    let kernel: Vec<CVector> = (4..6).map(|i| vecs.column(i).into_owned()).collect();
    let qs = [quadratic_form(&kernel[0]), quadratic_form(&kernel[1])];
    // As quadratics in z2: a z2² + b(z1) z2 + c(z1).
    let coeffs = |q: &[[C64; 3]; 3]| -> (Poly, Poly, Poly) {
        (vec![q[2][2]], vec![q[0][2] * 2.0, q[1][2] * 2.0], vec![q[0][0], q[0][1] * 2.0, q[1][1]])
    };
    let (a1, b1, c1) = coeffs(&qs[0]);
    let (a2, b2, c2) = coeffs(&qs[1]);
    let ac = psub(&pmul(&a1, &c2), &pmul(&a2, &c1));
    let ab = psub(&pmul(&a1, &b2), &pmul(&a2, &b1));
    let bc = psub(&pmul(&b1, &c2), &pmul(&b2, &c1));
    let mut res = psub(&pmul(&ac, &ac), &pmul(&ab, &bc));
    let scale = res.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    if scale <= 1e-14 {
        return Err(Error::DegenerateSystem("resultant vanishes identically; infinitely many solutions".into()));
    }
    while res.len() > 1 && res.last().unwrap().norm() <= 1e-10 * scale {
        res.pop();
    }
    let degree = res.len() - 1;
    let p_ker = CMatrix::from_columns(&kernel);
    let mut vectors = Vec::new();
    let mut residuals = Vec::new();
    for z1 in roots(&res)? {
        let den = peval(&a2, z1) * peval(&b1, z1) - peval(&a1, z1) * peval(&b2, z1);
        let num = peval(&a2, z1) * peval(&c1, z1) - peval(&a1, z1) * peval(&c2, z1);
        let z2 = if den.norm() > 1e-8 * scale.sqrt() {
            -num / den
        } else {
            // Solve the first quadratic and keep the root that best satisfies the second.
            let (a, b, c) = (peval(&a1, z1), peval(&b1, z1), peval(&c1, z1));
            let cands: Vec<C64> = if a.norm() > 1e-12 {
                let disc = (b * b - a * c * 4.0).sqrt();
                vec![(-b + disc) / (a * 2.0), (-b - disc) / (a * 2.0)]
            } else if b.norm() > 1e-12 {
                vec![-c / b]
            } else {
                vec![C64::from(0.0)]
            };
            cands
                .into_iter()
                .min_by(|x, y| {
                    let fx = qeval(&qs[1], &[C64::from(1.0), z1, *x]).norm();
                    let fy = qeval(&qs[1], &[C64::from(1.0), z1, *y]).norm();
                    fx.total_cmp(&fy)
                })
                .unwrap()
        };
        let z = polish(&qs, [z1, z2]);
        let e = CVector::from_vec(vec![C64::from(1.0), z[0], z[1]]).normalize();
        let x = symmetric_square(&e);
        residuals.push((p_ker.adjoint() * x).norm());
        vectors.push(e);
    }
    Ok(ProductVectorSolve { vectors, missing_at_infinity: 4 - degree, residuals })
}

/// The four product vectors in the range; errors on a non-generic system.
pub fn product_vectors_in_range(rho: &DensityMatrix, tol: &Tolerances) -> Result<Vec<CVector>> {
    let sol = product_vectors_affine(rho, tol)?;
    if sol.missing_at_infinity > 0 {
        return Err(Error::DegenerateSystem(format!(
            "{} affine solutions, {} at infinity",
            sol.vectors.len(),
            sol.missing_at_infinity
        )));
    }
    if let Some(worst) = sol.residuals.iter().copied().reduce(f64::max) {
        if worst > 1e-6 {
            return Err(Error::NotInRange(worst));
        }
    }
    Ok(sol.vectors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Separability {
    Separable,
    NotPpt,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct PptVerdict {
    pub verdict: Separability,
    /// `(p_i, e_i)` with `ρ = Σ p_i |e_i,e_i⟩⟨e_i,e_i|` when recovered.
    pub decomposition: Option<Vec<(f64, CVector)>>,
    pub rank: usize,
    pub min_pt_eigenvalue: f64,
}

/// PPT-based separability for two bosons in three modes and for symmetric qubits.
pub fn bosonic_ppt_separability(rho: &DensityMatrix, seed: u64, tol: &Tolerances) -> Result<PptVerdict> {
    let space = rho.space();
    let Space::Symmetric { particles, dim } = space else {
        return Err(Error::UnsupportedSystem(format!("{space:?}")));
    };
    if !((particles == 2 && dim == 3) || dim == 2) {
        return Err(Error::UnsupportedSystem(format!("{space:?}")));
    }
    let rank = rho.rank(tol);
    let min_pt = min_eigenvalue(&partial_transpose(rho, 0)?);
    let verdict = |v, decomposition| PptVerdict { verdict: v, decomposition, rank, min_pt_eigenvalue: min_pt };
    if min_pt < -tol.sym {
        return Ok(verdict(Separability::NotPpt, None));
    }
    if dim == 2 {
        let sep = particles <= 3 || rank <= particles;
        return Ok(verdict(if sep { Separability::Separable } else { Separability::Inconclusive }, None));
    }
    match rank {
        0..=3 => Ok(verdict(Separability::Separable, None)),
        4 => Ok(match rank_four_decomposition(rho, seed, tol)? {
            Some(dec) => verdict(Separability::Separable, Some(dec)),
            None => verdict(Separability::Inconclusive, None),
        }),
        _ => Ok(verdict(Separability::Inconclusive, None)),
    }
}

fn rank_four_decomposition(rho: &DensityMatrix, seed: u64, tol: &Tolerances) -> Result<Option<Vec<(f64, CVector)>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = None;
    let mut u = CMatrix::identity(3, 3);
    for _ in 0..4 {
        let l = lift_single_particle(&u, &rho.space())?;
        match product_vectors_in_range(&rho.conjugate_by(&l)?, tol) {
            Ok(v) => {
                found = Some(v.into_iter().map(|e| u.adjoint() * e).collect::<Vec<_>>());
                break;
            }
            Err(Error::DegenerateSystem(_)) => u = random::haar_unitary(3, &mut rng),
            Err(e) => return Err(e),
        }
    }
    let Some(vectors) = found else { return Ok(None) };
    let xs: Vec<CVector> = vectors.iter().map(symmetric_square).collect();
    let x = CMatrix::from_columns(&xs);
    let g = x.adjoint() * pinv_hermitian(rho.matrix(), tol.rank_rel) * &x;
    let diag_max = (0..4).map(|i| g[(i, i)].norm()).fold(0.0, f64::max);
    let off = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| g[(i, j)].norm())
        .fold(0.0, f64::max);
    if off > 1e-7 * diag_max {
        return Ok(None);
    }
    let dec: Vec<(f64, CVector)> = (0..4).map(|i| (1.0 / g[(i, i)].re, vectors[i].clone())).collect();
    let mut recon = CMatrix::zeros(6, 6);
    for (p, e) in &dec {
        let x = symmetric_square(e);
        recon += (&x * x.adjoint()).scale(*p);
    }
    if max_abs(&(recon - rho.matrix())) > 1e-8 {
        return Ok(None);
    }
    Ok(Some(dec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::pure::PureState;

    #[test]
    fn werner_family() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = PureState::from_entries(Space::qubits(), &[(vec![0, 1], c64(r, 0.0)), (vec![1, 0], c64(-r, 0.0))]).unwrap();
        let werner = |p: f64| {
            let m = DensityMatrix::pure(&singlet).matrix().scale(p) + CMatrix::identity(4, 4).scale((1.0 - p) / 4.0);
            DensityMatrix::new(Space::qubits(), m, &Tolerances::default()).unwrap()
        };
        assert!(is_ppt(&werner(0.25), 0, 1e-10).unwrap());
        let pt = partial_transpose(&werner(1.0), 0).unwrap();
        assert!((min_eigenvalue(&pt) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn transpose_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random::gaussian_matrix(12, 12, &mut rng);
        let once = partial_transpose_dims(&m, &[2, 3, 2], 1).unwrap();
        assert!(max_abs(&(partial_transpose_dims(&once, &[2, 3, 2], 1).unwrap() - &m)) == 0.0);
        assert!((once.trace() - m.trace()).norm() < 1e-12);
    }
}
