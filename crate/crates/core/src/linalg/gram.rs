use super::jacobi::hermitian_eigen;
use super::matrix::{inner, vec_norm, ComplexMatrix, C64};
use crate::config::Tolerances;
use crate::error::{Error, Result};

pub fn gram_schmidt(vectors: &[Vec<C64>]) -> Result<ComplexMatrix> {
    gram_schmidt_with(vectors, &Tolerances::default())
}

/// Orthonormalizes `vectors` by modified Gram–Schmidt with one re-orthogonalization pass.
///
/// Inputs whose estimated σ_min/σ_max (from the Gram matrix) falls below
/// `tol.independence` are rejected; the reported index is the first vector
/// whose residual after projection is relatively below the threshold, or the
/// one with the smallest such residual.
pub fn gram_schmidt_with(vectors: &[Vec<C64>], tol: &Tolerances) -> Result<ComplexMatrix> {
    let k = vectors.len();
    if k == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    let n = vectors[0].len();
    if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
    }
    let ratio = independence_ratio(vectors)?;

    let mut q: Vec<Vec<C64>> = Vec::with_capacity(k);
    let mut rel = Vec::with_capacity(k);
    for v in vectors {
        let original = vec_norm(v);
        let mut w = v.clone();
        for _pass in 0..2 {
            for qj in &q {
                let c = inner(qj, &w);
                for (wi, qi) in w.iter_mut().zip(qj) {
                    *wi -= c * qi;
                }
            }
        }
        let r = vec_norm(&w);
        rel.push(if original > 0.0 { r / original } else { 0.0 });
        let inv = if r > 0.0 { 1.0 / r } else { 0.0 };
        q.push(w.into_iter().map(|x| x * inv).collect());
    }
    if ratio < tol.independence || rel.iter().any(|&r| r < tol.independence) {
        let index = rel
            .iter()
            .position(|&r| r < tol.independence)
            .unwrap_or_else(|| (0..k).min_by(|&a, &b| rel[a].total_cmp(&rel[b])).unwrap_or(0));
        return Err(Error::RankDeficient { index });
    }
    ComplexMatrix::from_columns(&q)
}

/// σ_min/σ_max of the matrix with the given columns, estimated from the Gram matrix.
pub fn independence_ratio(vectors: &[Vec<C64>]) -> Result<f64> {
    let k = vectors.len();
    if k == 0 {
        return Ok(1.0);
    }
    let g = ComplexMatrix::from_fn(k, k, |i, j| inner(&vectors[i], &vectors[j]));
    let dec = hermitian_eigen(&g.hermitian_part())?;
    let ev = dec.real_eigenvalues();
    let top = ev.last().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return Ok(0.0);
    }
    Ok((ev[0].max(0.0) / top).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn standard_basis_is_fixed() {
        let e = vec![real(&[1.0, 0.0, 0.0]), real(&[0.0, 1.0, 0.0]), real(&[0.0, 0.0, 1.0])];
        let q = gram_schmidt(&e).unwrap();
        assert_eq!(q, ComplexMatrix::identity(3));
    }

    #[test]
    fn hand_example() {
        let q = gram_schmidt(&[real(&[1.0, 0.0]), real(&[1.0, 1.0])]).unwrap();
        assert!((&q - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn near_dependent_pair() {
        let r = gram_schmidt(&[real(&[1.0, 0.0]), real(&[1.0, 1e-9])]);
        assert_eq!(r, Err(Error::RankDeficient { index: 1 }));
    }

    #[test]
    fn zero_vector_reports_its_index() {
        let r = gram_schmidt(&[real(&[1.0, 0.0, 0.0]), real(&[0.0, 1.0, 0.0]), real(&[0.0, 0.0, 0.0])]);
        assert_eq!(r, Err(Error::RankDeficient { index: 2 }));
    }

    #[test]
    fn output_is_orthonormal_and_reproducible() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let vs: Vec<Vec<C64>> =
            (0..5).map(|_| (0..7).map(|_| crate::testing::random_complex(&mut rng)).collect()).collect();
        let q = gram_schmidt(&vs).unwrap();
        let g = q.adjoint_mul(&q);
        assert!((&g - &ComplexMatrix::identity(5)).frobenius_norm() < 1e-12);
        assert_eq!(q, gram_schmidt(&vs).unwrap());
    }
}
