//! Occupation-number bases for fixed particle number and the maps between
//! single-particle transformations and the many-particle sector.
//!
//! A fermionic basis state is a strictly increasing tuple of mode indices
//! (0-based), a bosonic one a non-decreasing tuple. Sectors are ordered
//! lexicographically, so for `N = 2, d = 4` the fermionic order is
//! `01, 02, 03, 12, 13, 23`.

use crate::error::{Error, Result};
use crate::linalg::{factorial, CMatrix, Statistics, C64};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Hilbert space of a pure state or density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Space {
    /// Two distinguishable parties, row-major amplitudes `psi[a * dim_b + b]`.
    Bipartite { dim_a: usize, dim_b: usize },
    /// `particles` fermions in `dim` modes.
    Antisymmetric { particles: usize, dim: usize },
    /// `particles` bosons in `dim` modes.
    Symmetric { particles: usize, dim: usize },
}

impl Space {
    pub fn fermions(particles: usize, dim: usize) -> Self {
        Space::Antisymmetric { particles, dim }
    }

    pub fn bosons(particles: usize, dim: usize) -> Self {
        Space::Symmetric { particles, dim }
    }

    pub fn qubits() -> Self {
        Space::Bipartite { dim_a: 2, dim_b: 2 }
    }

    pub fn statistics(&self) -> Option<Statistics> {
        match self {
            Space::Bipartite { .. } => None,
            Space::Antisymmetric { .. } => Some(Statistics::Fermion),
            Space::Symmetric { .. } => Some(Statistics::Boson),
        }
    }

    pub fn particles(&self) -> usize {
        match *self {
            Space::Bipartite { .. } => 2,
            Space::Antisymmetric { particles, .. } | Space::Symmetric { particles, .. } => particles,
        }
    }

    /// Single-particle dimension; for bipartite spaces the dimension of party A.
    pub fn single_particle_dim(&self) -> usize {
        match *self {
            Space::Bipartite { dim_a, .. } => dim_a,
            Space::Antisymmetric { dim, .. } | Space::Symmetric { dim, .. } => dim,
        }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            Space::Bipartite { dim_a, dim_b } => dim_a * dim_b,
            Space::Antisymmetric { particles, dim } => crate::linalg::binomial(dim, particles),
            Space::Symmetric { particles, dim } => crate::linalg::binomial(dim + particles - 1, particles),
        }
    }

    /// Basis labels in storage order.
    pub fn basis(&self) -> Vec<Vec<usize>> {
        match *self {
            Space::Bipartite { dim_a, dim_b } => {
                (0..dim_a).flat_map(|a| (0..dim_b).map(move |b| vec![a, b])).collect()
            }
            Space::Antisymmetric { particles, dim } => combinations(dim, particles),
            Space::Symmetric { particles, dim } => multisets(dim, particles),
        }
    }

    pub fn index_map(&self) -> HashMap<Vec<usize>, usize> {
        self.basis().into_iter().enumerate().map(|(i, t)| (t, i)).collect()
    }

    /// Same statistics with a different particle number.
    pub fn with_particles(&self, particles: usize) -> Space {
        match *self {
            Space::Antisymmetric { dim, .. } => Space::Antisymmetric { particles, dim },
            Space::Symmetric { dim, .. } => Space::Symmetric { particles, dim },
            b => b,
        }
    }
}

/// Strictly increasing `k`-tuples from `0..d`, lexicographic.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == d - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Non-decreasing `k`-tuples from `0..d`, lexicographic.
pub fn multisets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if d == 0 {
        if k == 0 {
            out.push(vec![]);
        }
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == d - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let v = cur[i - 1] + 1;
        for c in cur.iter_mut().skip(i - 1) {
            *c = v;
        }
    }
}

/// Sorts `idx` and returns the sign of the sorting permutation, or `None` on repeated entries.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v = idx.to_vec();
    let mut sign = 1.0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Occupation numbers of a tuple.
pub fn occupations(tuple: &[usize], d: usize) -> Vec<usize> {
    let mut n = vec![0; d];
    for &i in tuple {
        n[i] += 1;
    }
    n
}

/// `prod_k n_k!` for a bosonic tuple.
pub fn occupation_factorial(tuple: &[usize]) -> f64 {
    let mut prod = 1.0;
    let mut run = 1;
    for i in 1..=tuple.len() {
        if i < tuple.len() && tuple[i] == tuple[i - 1] {
            run += 1;
        } else {
            prod *= factorial(run);
            run = 1;
        }
    }
    prod
}

/// Permanent by Ryser's formula.
pub fn permanent(a: &CMatrix) -> C64 {
    let n = a.nrows();
    if n == 0 {
        return C64::from(1.0);
    }
    let mut total = C64::from(0.0);
    for mask in 1u64..(1u64 << n) {
        let mut prod = C64::from(1.0);
        for i in 0..n {
            let mut row = C64::from(0.0);
            for j in 0..n {
                if mask >> j & 1 == 1 {
                    row += a[(i, j)];
                }
            }
            prod *= row;
        }
        let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) { 1.0 } else { -1.0 };
        total += prod * sign;
    }
    total
}

fn submatrix(u: &CMatrix, rows: &[usize], cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(rows.len(), cols.len(), |i, j| u[(rows[i], cols[j])])
}

/// Action of a single-particle unitary `u` on the `N`-particle sector.
pub fn lift_single_particle(u: &CMatrix, space: &Space) -> Result<CMatrix> {
    let d = space.single_particle_dim();
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::DimensionMismatch(format!("{}x{} unitary for d = {d}", u.nrows(), u.ncols())));
    }
    let basis = space.basis();
    let m = basis.len();
    match space {
        Space::Bipartite { dim_b, .. } => {
            if *dim_b != d {
                return Err(Error::DimensionMismatch("unequal parties need lift_local".into()));
            }
            Ok(u.kronecker(u))
        }
        Space::Antisymmetric { .. } => {
            Ok(CMatrix::from_fn(m, m, |r, c| submatrix(u, &basis[r], &basis[c]).determinant()))
        }
        Space::Symmetric { .. } => Ok(CMatrix::from_fn(m, m, |r, c| {
            let norm = (occupation_factorial(&basis[r]) * occupation_factorial(&basis[c])).sqrt();
            permanent(&submatrix(u, &basis[r], &basis[c])) / norm
        })),
    }
}

/// `u_a ⊗ u_b` for bipartite states.
pub fn lift_local(u_a: &CMatrix, u_b: &CMatrix) -> CMatrix {
    u_a.kronecker(u_b)
}

/// Isometry from the sector into the full tensor space `(C^d)^{⊗N}`.
///
/// Column `S` is the normalized (anti)symmetrized product state; full-space
/// index of `(i_1, ..., i_N)` is `sum_k i_k d^{N-k}`.
pub fn embedding(space: &Space) -> CMatrix {
    if let Space::Bipartite { .. } = space {
        return CMatrix::identity(space.dimension(), space.dimension());
    }
    let n = space.particles();
    let d = space.single_particle_dim();
    let basis = space.basis();
    let mut e = CMatrix::zeros(d.pow(n as u32), basis.len());
    let fermion = matches!(space, Space::Antisymmetric { .. });
    for (col, tuple) in basis.iter().enumerate() {
        let norm = if fermion {
            factorial(n).sqrt()
        } else {
            (factorial(n) * occupation_factorial(tuple)).sqrt()
        };
        for perm in permutations(n) {
            let seq: Vec<usize> = perm.iter().map(|&p| tuple[p]).collect();
            let idx = seq.iter().fold(0, |acc, &i| acc * d + i);
            let sign = if fermion { permutation_sign(&perm) } else { 1.0 };
            e[(idx, col)] += C64::from(sign / norm);
        }
    }
    e
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub(crate) fn permutation_sign(p: &[usize]) -> f64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}
