//! Contractions of two-index coefficient matrices with the Levi-Civita tensor.
//!
//! Fermionic pattern, `N` antisymmetric operands, `m = d - 2N` free indices:
//! `F_α = Σ ε^{i_1…i_{2N} α_1…α_m} w¹_{i_1 i_2} … wᴺ_{i_{2N-1} i_{2N}}`.
//!
//! Bosonic pattern, `N` symmetric operands, `m = d - N` free indices:
//! `B_α = Σ v¹_{i_1 j_1} … vᴺ_{i_N j_N} ε^{i_1…i_N α} ε^{j_1…j_N α}`.
//!
//! Only the complement `T` of `α` contributes, which turns the sums into a
//! Pfaffian or a determinant of the `T x T` block. Distinct operands are
//! handled by polarization over subsets.

use super::{pfaffian, CMatrix, C64};
use crate::error::{Error, Result};
use crate::fock::combinations;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistics {
    Fermion,
    Boson,
}

#[derive(Debug, Clone)]
pub struct EpsilonContraction {
    pub statistics: Statistics,
    pub operands: Vec<CMatrix>,
    /// Number of free indices `α_1 < … < α_m`.
    pub free: usize,
}

impl EpsilonContraction {
    pub fn new(statistics: Statistics, operands: Vec<CMatrix>, free: usize) -> Self {
        EpsilonContraction { statistics, operands, free }
    }

    /// `n` copies of the same operand.
    pub fn power(statistics: Statistics, operand: &CMatrix, n: usize, free: usize) -> Self {
        EpsilonContraction { statistics, operands: vec![operand.clone(); n], free }
    }

    fn dim(&self) -> usize {
        self.operands.first().map_or(0, |m| m.nrows())
    }

    /// One value per strictly increasing free tuple, in lexicographic order.
    pub fn evaluate(&self) -> Result<Vec<(Vec<usize>, C64)>> {
        let d = self.dim();
        let n = self.operands.len();
        if n == 0 {
            return Err(Error::ArityMismatch { expected: 1, got: 0 });
        }
        if let Some(bad) = self.operands.iter().find(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::DimensionMismatch(format!("operand {}x{} vs d = {d}", bad.nrows(), bad.ncols())));
        }
        let contracted = match self.statistics {
            Statistics::Fermion => 2 * n,
            Statistics::Boson => n,
        };
        if contracted + self.free != d {
            return Err(Error::ArityMismatch { expected: d.saturating_sub(self.free), got: contracted });
        }
        let identical = self.operands.windows(2).all(|p| p[0] == p[1]);
        let subsets: Vec<(CMatrix, f64)> = if identical {
            vec![(self.operands[0].clone(), 1.0)]
        } else {
            (1u32..(1 << n))
                .map(|mask| {
                    let mut sum = CMatrix::zeros(d, d);
                    for (k, op) in self.operands.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            sum += op;
                        }
                    }
                    let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) { 1.0 } else { -1.0 };
                    (sum, sign)
                })
                .collect()
        };
        let mut out = Vec::new();
        for alpha in combinations(d, self.free) {
            let t: Vec<usize> = (0..d).filter(|i| !alpha.contains(i)).collect();
            let mut value = C64::from(0.0);
            for (m, sign) in &subsets {
                let block = CMatrix::from_fn(t.len(), t.len(), |i, j| m[(t[i], t[j])]);
                let v = match self.statistics {
                    Statistics::Fermion => pfaffian(&block, 1e-8)?,
                    Statistics::Boson => block.determinant(),
                };
                value += v * *sign;
            }
            let scale = match self.statistics {
                Statistics::Fermion => {
                    let inversions = t.iter().map(|&ti| alpha.iter().filter(|&&a| ti > a).count()).sum::<usize>();
                    let eps = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                    let base = 2f64.powi(n as i32);
                    if identical {
                        eps * base * super::factorial(n)
                    } else {
                        eps * base
                    }
                }
                Statistics::Boson => {
                    if identical {
                        super::factorial(n)
                    } else {
                        1.0
                    }
                }
            };
            out.push((alpha, value * scale));
        }
        Ok(out)
    }
}
