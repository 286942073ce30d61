//! Random matrix generators for tests, benches and batch checks.

use rand::Rng;

use crate::linalg::{gram_schmidt, ComplexMatrix, C64};

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Hermitian matrix with entries uniform in the unit square.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = random_complex(rng);
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    a
}

/// Unitary matrix from Gram–Schmidt on a random complex matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    loop {
        let cols: Vec<Vec<C64>> = (0..n).map(|_| (0..n).map(|_| random_complex(rng)).collect()).collect();
        if let Ok(q) = gram_schmidt(&cols) {
            return q;
        }
    }
}

/// U·diag(values)·U* for a random unitary U.
pub fn normal_with_spectrum<R: Rng>(rng: &mut R, values: &[C64]) -> ComplexMatrix {
    let u = random_unitary(rng, values.len());
    let d = ComplexMatrix::from_diagonal(values);
    u.matmul(&d).matmul(&u.adjoint())
}

/// Normal matrix with eigenvalues uniform in the unit square.
pub fn random_normal<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let values: Vec<C64> = (0..n).map(|_| random_complex(rng)).collect();
    normal_with_spectrum(rng, &values)
}
