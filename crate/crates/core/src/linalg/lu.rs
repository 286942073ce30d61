use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, PA = LU stored compactly.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    /// Smallest pivot modulus encountered.
    pub min_pivot: f64,
}

impl LuFactorization {
    /// Factors `a`; fails with `Singular` when a pivot drops below `pivot_tol · ‖A‖_F`.
    pub fn new(a: &ComplexMatrix, pivot_tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
        }
        let n = a.rows();
        let threshold = pivot_tol * a.frobenius_norm();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = f64::INFINITY;
        for col in 0..n {
            let (piv_row, piv_abs) = (col..n)
                .map(|r| (r, lu[(r, col)].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            min_pivot = min_pivot.min(piv_abs);
            if piv_abs <= threshold || piv_abs == 0.0 {
                return Err(Error::Singular { pivot: piv_abs, column: col });
            }
            if piv_row != col {
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(piv_row, j)];
                    lu[(piv_row, j)] = tmp;
                }
                perm.swap(col, piv_row);
            }
            let pivot = lu[(col, col)];
            for r in col + 1..n {
                let factor = lu[(r, col)] / pivot;
                lu[(r, col)] = factor;
                if factor.re == 0.0 && factor.im == 0.0 {
                    continue;
                }
                for j in col + 1..n {
                    let u = lu[(col, j)];
                    lu[(r, j)] -= factor * u;
                }
            }
        }
        if n == 0 {
            min_pivot = 0.0;
        }
        Ok(Self { lu, perm, min_pivot })
    }

    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.perm.len();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        x
    }

    /// A⁻¹ by column solves.
    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.perm.len();
        let mut inv = ComplexMatrix::zeros(n, n);
        let mut e = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            e[j] = C64::new(1.0, 0.0);
            inv.set_column(j, &self.solve(&e));
            e[j] = C64::new(0.0, 0.0);
        }
        inv
    }
}

/// Solves A·x = b with partial pivoting (pivot threshold 10⁻¹⁴·‖A‖_F).
pub fn lu_solve(a: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    Ok(LuFactorization::new(a, 1e-14)?.solve(b))
}
