//! Dense complex linear algebra: the substrate for every other module.

mod gram;
mod jacobi;
mod lu;
mod matrix;
mod normal;
mod norms;
mod tridiag;

pub use gram::{gram_schmidt, gram_schmidt_with, independence_ratio};
pub use jacobi::{decomposition_residual, hermitian_eigen, hermitian_eigen_with, SpectralDecomposition};
pub use lu::{lu_solve, LuFactorization};
pub use matrix::{inner, scaled_norm, vec_norm, ComplexMatrix, C64};
pub use normal::{normal_eigen, normal_eigen_with, normality_defect};
pub use norms::{frobenius_norm, operator_norm, polar_unitary, right_singular};
pub use tridiag::{sturm_count, tridiagonal_eigenvalues};
