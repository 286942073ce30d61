//! Normal eigensolver via the commuting Hermitian and skew-Hermitian parts.
//!
//! For normal A, H = (A + A*)/2 and K = (A − A*)/(2i) are Hermitian and
//! commute. H is diagonalized first; K is then diagonalized inside each
//! cluster of nearly equal H-eigenvalues.

use super::jacobi::{binary_scale, finish, hermitian_eigen_with, SpectralDecomposition};
use super::matrix::{inner, ComplexMatrix, C64};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// ‖AA* − A*A‖_F.
pub fn normality_defect(a: &ComplexMatrix) -> f64 {
    let s = binary_scale(a);
    let b = a.scale_real(s);
    let bh = b.adjoint();
    (&b.matmul(&bh) - &bh.matmul(&b)).frobenius_norm() / (s * s)
}

pub fn normal_eigen(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    normal_eigen_with(a, &Tolerances::default())
}

pub fn normal_eigen_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let scale = binary_scale(a);
    let b = a.scale_real(scale);
    let norm = b.frobenius_norm();
    let defect = normality_defect(&b);
    let allowed = tol.normal_check * norm * norm;
    if defect > allowed {
        return Err(Error::NotNormal { defect: defect / (scale * scale), allowed: allowed / (scale * scale) });
    }
    let h = b.hermitian_part();
    let k = b.skew_part();
    let first = split_and_refine(&b, &h, &k, tol, norm);
    match first {
        Ok(dec) => Ok(unscale(a, dec, scale, tol)?),
        Err(_) => {
            // Clusters of H that are only just separated leave K slightly coupled
            // across them; a generic combination H + φK separates them instead.
            let phi = 0.618_033_988_749_894_9;
            let mix = &h + &k.scale_real(phi);
            let dec = split_and_refine(&b, &mix, &k, tol, norm)?;
            unscale(a, dec, scale, tol)
        }
    }
}

fn unscale(a: &ComplexMatrix, dec: SpectralDecomposition, scale: f64, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let values = dec.eigenvalues.iter().map(|z| z / scale).collect();
    finish(a, values, dec.eigenvectors, 0, tol)
}

/// Diagonalizes `primary`, then `secondary` inside each primary cluster; eigenvalues
/// are Rayleigh quotients of `b`.
fn split_and_refine(
    b: &ComplexMatrix,
    primary: &ComplexMatrix,
    secondary: &ComplexMatrix,
    tol: &Tolerances,
    norm: f64,
) -> Result<SpectralDecomposition> {
    let hdec = hermitian_eigen_with(primary, tol)?;
    let hv = hdec.real_eigenvalues();
    let mut v = hdec.eigenvectors;
    let gap = tol.normal_cluster * norm;
    let mut start = 0;
    while start < hv.len() {
        let mut end = start + 1;
        while end < hv.len() && hv[end] - hv[end - 1] <= gap {
            end += 1;
        }
        if end - start > 1 {
            let idx: Vec<usize> = (start..end).collect();
            let vc = v.select_columns(&idx);
            let kc = vc.adjoint_mul(&secondary.matmul(&vc)).hermitian_part();
            let kdec = hermitian_eigen_with(&kc, tol)?;
            let rotated = vc.matmul(&kdec.eigenvectors);
            for (c, &j) in idx.iter().enumerate() {
                v.set_column(j, &rotated.column(c));
            }
        }
        start = end;
    }
    let values: Vec<C64> = (0..v.cols())
        .map(|j| {
            let col = v.column(j);
            inner(&col, &b.mat_vec(&col))
        })
        .collect();
    finish(b, values, v, 0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::matching_distance;
    use crate::testing::{normal_with_spectrum, random_hermitian, random_normal, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn imaginary_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
        let d = normal_eigen(&a).unwrap();
        let got = matching_distance(&d.eigenvalues, &[C64::new(0.0, 1.0), C64::new(0.0, -1.0)]).unwrap();
        assert!(got < 1e-15);
    }

    #[test]
    fn complex_symmetric_offdiagonal() {
        // Characteristic polynomial x² − c², roots ±c.
        let c = C64::new(1.0, 2.0);
        let a = ComplexMatrix::from_rows(&[vec![C64::new(0.0, 0.0), c], vec![c, C64::new(0.0, 0.0)]]).unwrap();
        let d = normal_eigen(&a).unwrap();
        assert!(matching_distance(&d.eigenvalues, &[c, -c]).unwrap() < 1e-14);
    }

    #[test]
    fn givens_product_is_unitary_spectrum() {
        let n = 4;
        let mut u = ComplexMatrix::identity(n);
        let angles = [0.3, 1.1, -0.7, 2.2, 0.05, -1.9];
        let mut a = 0;
        for p in 0..n {
            for q in p + 1..n {
                let (s, c) = f64::sin_cos(angles[a]);
                let phase = C64::from_polar(1.0, 0.4 * a as f64);
                let mut g = ComplexMatrix::identity(n);
                g[(p, p)] = C64::new(c, 0.0);
                g[(q, q)] = C64::new(c, 0.0);
                g[(p, q)] = -phase.conj() * s;
                g[(q, p)] = phase * s;
                u = u.matmul(&g);
                a += 1;
            }
        }
        let d = normal_eigen(&u).unwrap();
        for z in &d.eigenvalues {
            assert!((z.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn defect_of_shift_matrix() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[2.0, 0.0]]).unwrap();
        assert!((normality_defect(&a) - 3.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(normal_eigen(&a), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn defect_is_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = ComplexMatrix::from_fn(4, 4, |_, _| crate::testing::random_complex(&mut rng));
            let u = random_unitary(&mut rng, 4);
            let b = u.matmul(&a).matmul(&u.adjoint());
            assert!((normality_defect(&a) - normality_defect(&b)).abs() < 1e-10);
            let h = random_hermitian(&mut rng, 4);
            assert!(normality_defect(&h) < 1e-14);
            assert!(normality_defect(&u) < 1e-14);
        }
    }

    #[test]
    fn agrees_with_hermitian_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [2, 5, 8] {
            let a = random_hermitian(&mut rng, n);
            let h = crate::linalg::hermitian_eigen(&a).unwrap();
            let m = normal_eigen(&a).unwrap();
            assert!(matching_distance(&h.eigenvalues, &m.eigenvalues).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn degenerate_real_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let values = [C64::new(0.5, 1.0), C64::new(0.5, -1.0), C64::new(0.5, 0.25), C64::new(-0.3, 0.0)];
        let a = normal_with_spectrum(&mut rng, &values);
        let d = normal_eigen(&a).unwrap();
        assert!(matching_distance(&d.eigenvalues, &values).unwrap() < 1e-12);
        assert!(d.residual <= 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn random_normal_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let a = random_normal(&mut rng, 8);
            let d = normal_eigen(&a).unwrap();
            assert!(d.residual <= 1e-10 * a.frobenius_norm());
            assert!(d.orthonormality_defect() <= 1e-10 * 8.0);
        }
    }
}
