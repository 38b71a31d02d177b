use super::{antisymmetry_defect, max_abs, CMatrix, C64};
use crate::error::{Error, Result};

/// Pfaffian by Parlett-Reid tridiagonalization with partial pivoting.
///
/// `tol_sym` is relative to the largest entry.
pub fn pfaffian(a: &CMatrix, tol_sym: f64) -> Result<C64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", a.nrows(), a.ncols())));
    }
    let n = a.nrows();
    if n % 2 == 1 {
        return Err(Error::OddDimension);
    }
    let scale = max_abs(a).max(1.0);
    let defect = antisymmetry_defect(a);
    if defect > tol_sym * scale {
        return Err(Error::NotAntisymmetric(defect));
    }
    if n == 0 {
        return Ok(C64::from(1.0));
    }
    let mut a = (a - a.transpose()).scale(0.5);
    let mut pf = C64::from(1.0);
    let mut k = 0;
    while k + 1 < n {
        let kp = (k + 1..n).max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm())).unwrap();
        if kp != k + 1 {
            a.swap_rows(k + 1, kp);
            a.swap_columns(k + 1, kp);
            pf = -pf;
        }
        let piv = a[(k, k + 1)];
        if piv.norm() == 0.0 {
            return Ok(C64::from(0.0));
        }
        pf *= piv;
        if k + 2 < n {
            let m = n - k - 2;
            let tau: Vec<C64> = (0..m).map(|j| a[(k, k + 2 + j)] / piv).collect();
            let col: Vec<C64> = (0..m).map(|i| a[(k + 2 + i, k + 1)]).collect();
            for i in 0..m {
                for j in 0..m {
                    a[(k + 2 + i, k + 2 + j)] += tau[i] * col[j] - col[i] * tau[j];
                }
            }
        }
        k += 2;
    }
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;

    #[test]
    fn two_by_two() {
        let a = CMatrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(2.0, 1.0), c64(-2.0, -1.0), c64(0.0, 0.0)]);
        assert!((pfaffian(&a, 1e-10).unwrap() - c64(2.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn four_by_four_formula() {
        let v = [c64(1.0, 0.5), c64(-0.3, 2.0), c64(0.7, 0.0), c64(1.1, -0.4), c64(0.2, 0.9), c64(-1.5, 0.3)];
        let mut a = CMatrix::zeros(4, 4);
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            a[(i, j)] = v[p];
            a[(j, i)] = -v[p];
        }
        let expect = v[0] * v[5] - v[1] * v[4] + v[2] * v[3];
        assert!((pfaffian(&a, 1e-10).unwrap() - expect).norm() < 1e-13);
    }

    #[test]
    fn errors() {
        assert_eq!(pfaffian(&CMatrix::zeros(3, 3), 1e-10), Err(Error::OddDimension));
        assert!(matches!(pfaffian(&CMatrix::identity(2, 2), 1e-10), Err(Error::NotAntisymmetric(_))));
    }
}
