//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use super::matrix::{ComplexMatrix, C64, ZERO};
#[cfg(test)]
use super::matrix::ONE;
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Eigenvalues with unit eigenvectors as the columns of `eigenvectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<C64>,
    pub eigenvectors: ComplexMatrix,
    /// ‖A·V − V·diag(λ)‖_F of the returned pair.
    pub residual: f64,
}

impl SpectralDecomposition {
    /// Real parts of the eigenvalues (exact for Hermitian input).
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }

    /// ‖V*V − I‖_F.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.eigenvectors.adjoint_mul(&self.eigenvectors);
        (&g - &ComplexMatrix::identity(g.rows())).frobenius_norm()
    }
}

/// Power of two that brings the largest entry of `a` near 1, so rescaling is exact.
pub(crate) fn binary_scale(a: &ComplexMatrix) -> f64 {
    let m = a.max_abs();
    if m == 0.0 || !m.is_finite() {
        return 1.0;
    }
    let e = m.log2().floor() as i32;
    2f64.powi(-e.clamp(-1000, 1000))
}

/// Eigen-decomposition of a Hermitian matrix with default tolerances.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<SpectralDecomposition> {
    hermitian_eigen_with(a, &Tolerances::default())
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Eigenvalues are returned in ascending order; each eigenvector is scaled so
/// its largest-modulus component is real positive.
pub fn hermitian_eigen_with(a: &ComplexMatrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = a.frobenius_norm();
    let defect = a.hermitian_defect();
    let allowed = tol.hermitian_check * norm;
    if defect > allowed {
        return Err(Error::NotHermitian { defect, allowed });
    }
    let scale = binary_scale(a);
    let work = a.hermitian_part().scale_real(scale);
    let (diag, vectors, sweeps) = jacobi_sweeps(work, tol.max_sweeps);
    let values: Vec<C64> = diag.iter().map(|&d| C64::new(d / scale, 0.0)).collect();
    finish(a, values, vectors, sweeps, tol)
}

/// Runs cyclic Jacobi on a Hermitian matrix; returns (diagonal, accumulated rotations, sweeps used).
fn jacobi_sweeps(mut a: ComplexMatrix, max_sweeps: usize) -> (Vec<f64>, ComplexMatrix, usize) {
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();
    if n < 2 || norm == 0.0 {
        return (a.diagonal().iter().map(|z| z.re).collect(), v, 0);
    }
    let stop = (n as f64) * f64::EPSILON * norm;
    let negligible = 1e-3 * f64::EPSILON * norm / n as f64;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        if off_norm(&a) <= stop {
            break;
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= negligible {
                    continue;
                }
                rotate(&mut a, &mut v, p, q, apq, r);
            }
        }
    }
    (a.diagonal().iter().map(|z| z.re).collect(), v, sweeps)
}

fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let it = (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
    super::matrix::scaled_norm(it.map(|(i, j)| a[(i, j)]))
}

/// Annihilates a[p][q] with the unitary U = diag(1, e^{-iφ})·R(θ) acting on (p, q).
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, apq: C64, r: f64) {
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / r;
    let zeta = (app - aqq) / (2.0 * r);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + zeta.hypot(1.0))
    } else {
        -1.0 / (-zeta + zeta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let sp = phase.conj() * s;
    let cp = phase.conj() * c;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * sp;
        a[(k, q)] = -akp * s + akq * cp;
    }
    let sp_row = phase * s;
    let cp_row = phase * c;
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * sp_row;
        a[(q, k)] = -apk * s + aqk * cp_row;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(app + r * t, 0.0);
    a[(q, q)] = C64::new(aqq - r * t, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * sp;
        v[(k, q)] = -vkp * s + vkq * cp;
    }
}

/// Rotates each column so its largest-modulus component is real positive.
pub(crate) fn fix_phases(v: &mut ComplexMatrix) {
    for j in 0..v.cols() {
        let col = v.column(j);
        let big = col.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        if big == 0.0 {
            continue;
        }
        let pivot = col.iter().position(|z| z.norm() >= big * (1.0 - 1e-10)).unwrap_or(0);
        let ph = col[pivot] / col[pivot].norm();
        let rot = ph.conj();
        let fixed: Vec<C64> = col.iter().map(|z| z * rot).collect();
        v.set_column(j, &fixed);
        v[(pivot, j)] = C64::new(v[(pivot, j)].norm(), 0.0);
    }
}

/// Ordering by real part, then imaginary part; real parts within `tie` of each
/// other are treated as equal so that rounding noise does not decide the order.
pub(crate) fn spectral_order(values: &[C64], tie: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].re.total_cmp(&values[j].re).then(i.cmp(&j)));
    let mut out = Vec::with_capacity(idx.len());
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && values[idx[end]].re - values[idx[end - 1]].re <= tie {
            end += 1;
        }
        let mut group = idx[start..end].to_vec();
        group.sort_by(|&i, &j| values[i].im.total_cmp(&values[j].im).then(i.cmp(&j)));
        out.extend(group);
        start = end;
    }
    out
}

/// Sorts, fixes phases and validates a decomposition of `a`.
pub(crate) fn finish(
    a: &ComplexMatrix,
    values: Vec<C64>,
    vectors: ComplexMatrix,
    sweeps: usize,
    tol: &Tolerances,
) -> Result<SpectralDecomposition> {
    let norm = a.frobenius_norm();
    let order = spectral_order(&values, 1e-13 * norm);
    let eigenvalues: Vec<C64> = order.iter().map(|&i| values[i]).collect();
    let mut eigenvectors = vectors.select_columns(&order);
    fix_phases(&mut eigenvectors);
    let residual = decomposition_residual(a, &eigenvalues, &eigenvectors);
    let dec = SpectralDecomposition { eigenvalues, eigenvectors, residual };
    let n = a.rows().max(1) as f64;
    if residual > tol.eigen_residual * norm || dec.orthonormality_defect() > tol.eigen_residual * n {
        return Err(Error::NoConvergence { residual, sweeps });
    }
    Ok(dec)
}

/// ‖A·V − V·diag(λ)‖_F.
pub fn decomposition_residual(a: &ComplexMatrix, values: &[C64], vectors: &ComplexMatrix) -> f64 {
    let mut r = a.matmul(vectors);
    for j in 0..vectors.cols() {
        for i in 0..vectors.rows() {
            r[(i, j)] -= vectors[(i, j)] * values[j];
        }
    }
    r.frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::random_hermitian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(n: usize, k: usize) -> Vec<C64> {
        let mut e = vec![ZERO; n];
        e[k] = ONE;
        e
    }

    #[test]
    fn diagonal_input() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        let d = hermitian_eigen(&a).unwrap();
        assert_eq!(d.real_eigenvalues(), vec![-1.0, 1.0]);
        assert_eq!(d.eigenvectors.column(0), unit(2, 1));
        assert_eq!(d.eigenvectors.column(1), unit(2, 0));
    }

    #[test]
    fn paper_segment_matrix() {
        let s = 2f64.powi(-4);
        let a = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap();
        let d = hermitian_eigen(&a).unwrap();
        let e = 2f64.sqrt() / 16.0;
        assert!((d.eigenvalues[0].re + e).abs() < 1e-16);
        assert!((d.eigenvalues[1].re - e).abs() < 1e-16);
    }

    #[test]
    fn decomposition_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1, 2, 3, 7, 16, 33] {
            let a = random_hermitian(&mut rng, n);
            let d = hermitian_eigen(&a).unwrap();
            assert!(d.residual <= 1e-10 * a.frobenius_norm());
            assert!(d.orthonormality_defect() <= 1e-10 * n as f64);
            assert!(d.eigenvalues.windows(2).all(|w| w[0].re <= w[1].re));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[2.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigen(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sweep_cap_reports_no_convergence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(&mut rng, 12);
        let tol = Tolerances { max_sweeps: 1, ..Tolerances::default() };
        assert!(matches!(hermitian_eigen_with(&a, &tol), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn tiny_scale_is_exact() {
        let s = 2f64.powi(-900);
        let a = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap();
        let d = hermitian_eigen(&a).unwrap();
        let e = s * 2f64.sqrt();
        assert!((d.eigenvalues[1].re - e).abs() <= 1e-15 * e);
    }
}
