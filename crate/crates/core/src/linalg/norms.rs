use super::jacobi::{binary_scale, hermitian_eigen};
use super::matrix::{vec_norm, ComplexMatrix, C64};
use crate::error::Result;

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.frobenius_norm()
}

/// Largest singular value, √λ_max(A*A).
///
/// Power iteration on A*A gives a lower bound whose error depends on the gap
/// between the two largest singular values, so the eigenvalue is taken from
/// the Jacobi decomposition of the (binary-scaled) Gram matrix instead.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0.0);
    }
    let s = binary_scale(a);
    let b = a.scale_real(s);
    let gram = b.adjoint_mul(&b).hermitian_part();
    let dec = hermitian_eigen(&gram)?;
    let top = dec.eigenvalues.last().map_or(0.0, |z| z.re.max(0.0));
    Ok(top.sqrt() / s)
}

/// Singular values (descending) and right singular vectors of `a`.
pub fn right_singular(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let s = binary_scale(a);
    let b = a.scale_real(s);
    let dec = hermitian_eigen(&b.adjoint_mul(&b).hermitian_part())?;
    let k = dec.eigenvalues.len();
    let order: Vec<usize> = (0..k).rev().collect();
    let sv = order.iter().map(|&i| dec.eigenvalues[i].re.max(0.0).sqrt() / s).collect();
    Ok((sv, dec.eigenvectors.select_columns(&order)))
}

/// Unitary factor Q of the polar decomposition M = Q·P (square M).
///
/// Maximizes Re tr(Q*·M), i.e. solves the orthogonal Procrustes problem.
/// Returns Q together with σ_min(M).
pub fn polar_unitary(m: &ComplexMatrix) -> Result<(ComplexMatrix, f64)> {
    let n = m.rows();
    let (sv, w) = right_singular(m)?;
    let smax = sv.first().copied().unwrap_or(0.0);
    let cutoff = 1e-12 * smax.max(f64::MIN_POSITIVE);
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for (j, &sigma) in sv.iter().enumerate() {
        if sigma <= cutoff {
            break;
        }
        let col: Vec<C64> = m.mat_vec(&w.column(j)).into_iter().map(|z| z / sigma).collect();
        u_cols.push(col);
    }
    // Complete U with standard basis vectors when M is rank deficient.
    let mut e = 0;
    while u_cols.len() < n && e < n {
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[e] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for u in &u_cols {
                let c = super::matrix::inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= c * ui;
                }
            }
        }
        let r = vec_norm(&v);
        if r > 1e-6 {
            u_cols.push(v.into_iter().map(|z| z / r).collect());
        }
        e += 1;
    }
    let u = ComplexMatrix::from_columns(&u_cols)?;
    let q = u.matmul(&w.adjoint());
    Ok((q, sv.last().copied().unwrap_or(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_norm() {
        let a = ComplexMatrix::from_real_diagonal(&[3.0, -4.0]);
        assert!((operator_norm(&a).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_offdiagonal() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, -0.5], &[-0.5, 0.0]]).unwrap();
        assert!((operator_norm(&a).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn polar_of_unitary_is_itself() {
        let (s, c) = 0.7f64.sin_cos();
        let q = ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap();
        let (p, smin) = polar_unitary(&q).unwrap();
        assert!((&p - &q).frobenius_norm() < 1e-14);
        assert!((smin - 1.0).abs() < 1e-14);
    }

    #[test]
    fn polar_of_scaled_rotation() {
        let (s, c) = 0.3f64.sin_cos();
        let q = ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap();
        let m = q.matmul(&ComplexMatrix::from_real_diagonal(&[2.0, 0.5]));
        let (p, smin) = polar_unitary(&m).unwrap();
        assert!((&p - &q).frobenius_norm() < 1e-13);
        assert!((smin - 0.5).abs() < 1e-13);
    }

    #[test]
    fn polar_of_rank_deficient_is_unitary() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let (p, smin) = polar_unitary(&m).unwrap();
        assert_eq!(smin, 0.0);
        let g = p.adjoint_mul(&p);
        assert!((&g - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-14);
    }
}
