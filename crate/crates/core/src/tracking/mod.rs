//! Continuation of eigenvalue curves and eigenvector frames along a grid,
//! crossing detection and regularity diagnostics.
//!
//! Labels are carried from one grid point to the next by the optimal
//! (bottleneck) assignment between extrapolated and newly computed values.
//! When the prediction error is comparable to the spacing of the new values
//! the step is bisected.

mod continuation;
mod crossings;
mod diagnostics;
mod frames;

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::{Grid, MatrixFamily, Structure};
use crate::linalg::{hermitian_eigen_with, normal_eigen_with, tridiagonal_eigenvalues, ComplexMatrix, C64};

pub(crate) use continuation::{continue_curves, Sample};
pub use crossings::{crossing_detect, crossing_detect_with, CrossingReport};
pub use diagnostics::{curve_derivative, hoelder_quotient, sorted_vs_smooth, CrossingJump, SortedComparison};
pub use frames::{track_eigenvectors, track_eigenvectors_with};

/// Structured record of something noteworthy that happened while tracking.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    /// A step was bisected because its labeling was ambiguous.
    Refinement { t_lo: f64, t_hi: f64, depth: usize },
    /// Labels stayed ambiguous (refinement disabled or exhausted).
    Ambiguity { t_lo: f64, t_hi: f64, distance: f64, gap: f64 },
    /// An eigenvector step was bisected after a cluster mismatch.
    FrameRefinement { t_lo: f64, t_hi: f64, depth: usize },
    /// Two curves meet or nearly meet.
    Crossing { t_star: f64, pair: (usize, usize), gap_min: f64, order: Option<usize>, infinite_order_suspect: bool },
}

/// Labeled eigenvalue curves on a grid.
#[derive(Debug, Clone)]
pub struct CurveBundle {
    pub grid: Grid,
    /// `curves[i][k]` is curve `i` at grid point `k`.
    pub curves: Vec<Vec<C64>>,
    /// ‖A(t_k)‖_F, or the root scale for polynomial families.
    pub scales: Vec<f64>,
    /// Per grid point an n×N matrix whose column `i` is the eigenvector of curve `i`.
    pub frames: Option<Vec<ComplexMatrix>>,
    /// Largest principal angle between consecutive frames, per step.
    pub gauge_angles: Vec<f64>,
    pub events: Vec<Event>,
}

impl CurveBundle {
    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    /// Values of all curves at grid point `k`.
    pub fn values_at(&self, k: usize) -> Vec<C64> {
        self.curves.iter().map(|c| c[k]).collect()
    }

    pub fn scale(&self) -> f64 {
        self.scales.iter().copied().fold(0.0, f64::max)
    }
}

fn check_grid(family: &MatrixFamily, grid: &Grid) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    let (lo, hi) = (grid.t(0), grid.t(grid.len() - 1));
    if !family.contains(lo) || !family.contains(hi) {
        let (a, b) = family.domain();
        return Err(Error::InvalidGrid(format!("grid [{lo}, {hi}] leaves the domain [{a}, {b}]")));
    }
    Ok(())
}

/// Eigenvalues of `A(anchor + offset)` in the solver's order, with the scale ‖A‖_F.
pub(crate) fn eigen_sample(family: &MatrixFamily, anchor: f64, offset: f64, tol: &Tolerances) -> Result<Sample> {
    if family.structure() == Structure::Hermitian {
        if let Some((d, e)) = family.tridiagonal_at(anchor, offset) {
            let scale = (d.iter().map(|x| x * x).sum::<f64>() + 2.0 * e.iter().map(|x| x * x).sum::<f64>()).sqrt();
            if d.iter().chain(&e).any(|x| !x.is_finite()) {
                return Err(Error::StructureViolation { t: anchor + offset, detail: "non-finite entries".into() });
            }
            let values = tridiagonal_eigenvalues(&d, &e).into_iter().map(|x| C64::new(x, 0.0)).collect();
            return Ok(Sample { values, scale });
        }
    }
    let a = family.at_offset(anchor, offset);
    family.check_structure(anchor + offset, &a, tol)?;
    let scale = a.frobenius_norm();
    let values = match family.structure() {
        Structure::Hermitian => hermitian_eigen_with(&a.hermitian_part(), tol)?.eigenvalues,
        Structure::Normal => normal_eigen_with(&a, tol)?.eigenvalues,
        Structure::General => return Err(Error::Config("tracking needs a Hermitian or normal family".into())),
    };
    Ok(Sample { values, scale })
}

/// Labeled eigenvalue curves of `family` on `grid`.
pub fn track_eigenvalues(family: &MatrixFamily, grid: &Grid, refine: bool) -> Result<CurveBundle> {
    track_eigenvalues_with(family, grid, refine, &Tolerances::default())
}

pub fn track_eigenvalues_with(family: &MatrixFamily, grid: &Grid, refine: bool, tol: &Tolerances) -> Result<CurveBundle> {
    if family.structure() == Structure::General {
        return Err(Error::Config("tracking needs a Hermitian or normal family".into()));
    }
    check_grid(family, grid)?;
    let anchor = grid.anchor();
    let (curves, scales, events) = continue_curves(grid, refine, tol, |off| eigen_sample(family, anchor, off, tol))?;
    Ok(CurveBundle { grid: grid.clone(), curves, scales, frames: None, gauge_angles: Vec::new(), events })
}
