//! Smooth parameterization of eigenvalues and eigenvectors for one-parameter
//! families of Hermitian and normal matrices.
//!
//! The crate is organized along the computational pipeline:
//!
//! - [`linalg`]: dense complex matrices, Jacobi eigensolvers, Gram–Schmidt, LU.
//! - [`family`]: one-parameter families `t ↦ A(t)` and their generators.
//! - [`riesz`]: contour-quadrature spectral projectors, local frames and
//!   compression of `A(t)` to an invariant subspace.
//! - [`matching`]: the bottleneck matching distance on unordered eigenvalue tuples.
//! - [`tracking`]: continuation of eigenvalue curves and eigenvector frames,
//!   crossing detection and regularity diagnostics.
//! - [`polyroots`]: root tracking for curves of monic polynomials and power
//!   substitution `t = t0 ± s^N`.
//! - [`cli`]: the batch command-line surface.
//!
//! Per-grid-point work runs on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise; results are identical either way.

pub mod cli;
pub mod config;
pub mod error;
pub mod family;
pub mod linalg;
pub mod matching;
pub mod par;
pub mod polyroots;
pub mod riesz;
pub mod testing;
pub mod tracking;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
