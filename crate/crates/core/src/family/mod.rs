//! One-parameter matrix families `t ↦ A(t)`.
//!
//! A family is an immutable evaluator plus metadata. Evaluation goes through
//! a chart `(anchor, offset)`: the point is `anchor + offset`, but evaluators
//! that know a local coordinate (glued segments) use the offset exactly, which
//! matters when the offset is far below the ulp of the anchor.

mod generators;
mod glued;
mod grid;
pub mod spec;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{normality_defect, ComplexMatrix};
use crate::par::par_try_map;

pub use generators::{polynomial_entry_family, schrodinger_family, Potential};
pub use glued::{
    glued_family, paper_anchor, paper_eigenvalue, paper_eigenvalue_derivative, paper_example_family,
    paper_segment, paper_step, SegmentSpec, PAPER_MAX_N,
};
pub use grid::Grid;

/// Structural class of every matrix in a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    Hermitian,
    Normal,
    General,
}

/// Regularity class the family is claimed to have. Metadata only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimedClass {
    Analytic,
    Quasianalytic,
    DenjoyCarleman,
    Smooth,
    Hoelder(f64),
}

/// Evaluates a family at a point given as `anchor + offset`.
///
/// Implementations must be deterministic and free of side effects.
pub trait FamilyEvaluator: Send + Sync {
    fn eval(&self, t: f64) -> ComplexMatrix;

    fn eval_offset(&self, anchor: f64, offset: f64) -> ComplexMatrix {
        self.eval(anchor + offset)
    }

    /// Real symmetric tridiagonal form (diagonal, off-diagonal), when the family has one.
    fn tridiagonal(&self, _anchor: f64, _offset: f64) -> Option<(Vec<f64>, Vec<f64>)> {
        None
    }
}

struct FnEvaluator<F>(F);

impl<F> FamilyEvaluator for FnEvaluator<F>
where
    F: Fn(f64) -> ComplexMatrix + Send + Sync,
{
    fn eval(&self, t: f64) -> ComplexMatrix {
        (self.0)(t)
    }
}

#[derive(Clone)]
pub struct MatrixFamily {
    size: usize,
    domain: (f64, f64),
    structure: Structure,
    claimed_class: ClaimedClass,
    evaluator: Arc<dyn FamilyEvaluator>,
    notes: Vec<String>,
}

impl MatrixFamily {
    pub fn new(
        size: usize,
        domain: (f64, f64),
        structure: Structure,
        claimed_class: ClaimedClass,
        evaluator: Arc<dyn FamilyEvaluator>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Config("family size must be positive".into()));
        }
        if domain.0.is_nan() || domain.1.is_nan() || domain.0 >= domain.1 {
            return Err(Error::Config(format!("invalid domain [{}, {}]", domain.0, domain.1)));
        }
        Ok(Self { size, domain, structure, claimed_class, evaluator, notes: Vec::new() })
    }

    /// Family from a closure.
    pub fn from_fn<F>(size: usize, domain: (f64, f64), structure: Structure, f: F) -> Result<Self>
    where
        F: Fn(f64) -> ComplexMatrix + Send + Sync + 'static,
    {
        Self::new(size, domain, structure, ClaimedClass::Smooth, Arc::new(FnEvaluator(f)))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn claimed_class(&self) -> ClaimedClass {
        self.claimed_class
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn with_claimed_class(mut self, class: ClaimedClass) -> Self {
        self.claimed_class = class;
        self
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::Config(format!("invalid domain [{lo}, {hi}]")));
        }
        self.domain = (lo, hi);
        Ok(self)
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn at(&self, t: f64) -> ComplexMatrix {
        self.evaluator.eval(t)
    }

    pub fn at_offset(&self, anchor: f64, offset: f64) -> ComplexMatrix {
        self.evaluator.eval_offset(anchor, offset)
    }

    pub fn tridiagonal_at(&self, anchor: f64, offset: f64) -> Option<(Vec<f64>, Vec<f64>)> {
        self.evaluator.tridiagonal(anchor, offset)
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.domain.0 && t <= self.domain.1
    }

    /// Checks dimension and structural class of `m = A(t)`.
    pub fn check_structure(&self, t: f64, m: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(Error::StructureViolation {
                t,
                detail: format!("expected {0}x{0}, got {1}x{2}", self.size, m.rows(), m.cols()),
            });
        }
        if !m.is_finite() {
            return Err(Error::StructureViolation { t, detail: "non-finite entries".into() });
        }
        let norm = m.frobenius_norm();
        match self.structure {
            Structure::Hermitian => {
                let defect = m.hermitian_defect();
                if defect > tol.hermitian_check.max(1e-10) * norm {
                    return Err(Error::StructureViolation { t, detail: format!("hermitian defect {defect:.3e}") });
                }
            }
            Structure::Normal => {
                let defect = normality_defect(m);
                if defect > tol.normal_check * norm * norm {
                    return Err(Error::StructureViolation { t, detail: format!("normality defect {defect:.3e}") });
                }
            }
            Structure::General => {}
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixFamily")
            .field("size", &self.size)
            .field("domain", &self.domain)
            .field("structure", &self.structure)
            .field("claimed_class", &self.claimed_class)
            .finish_non_exhaustive()
    }
}

/// Evaluates `family` on `grid`, verifying the structural invariant at each point.
pub fn sample(family: &MatrixFamily, grid: &Grid) -> Result<Vec<ComplexMatrix>> {
    sample_with(family, grid, &Tolerances::default())
}

pub fn sample_with(family: &MatrixFamily, grid: &Grid, tol: &Tolerances) -> Result<Vec<ComplexMatrix>> {
    let offsets = grid.offsets();
    par_try_map(offsets, |&off| {
        let t = grid.anchor() + off;
        let m = family.at_offset(grid.anchor(), off);
        family.check_structure(t, &m, tol)?;
        Ok(m)
    })
}
