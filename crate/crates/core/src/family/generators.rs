use std::sync::Arc;

use super::{ClaimedClass, FamilyEvaluator, MatrixFamily, Structure};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Potential `V(t, x)`.
pub type Potential = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

struct Schrodinger {
    potential: Potential,
    nodes: Vec<f64>,
    inv_h2: f64,
}

impl Schrodinger {
    fn bands(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let diag = self.nodes.iter().map(|&x| 2.0 * self.inv_h2 + (self.potential)(t, x)).collect();
        let off = vec![-self.inv_h2; self.nodes.len() - 1];
        (diag, off)
    }
}

impl FamilyEvaluator for Schrodinger {
    fn eval(&self, t: f64) -> ComplexMatrix {
        let (d, e) = self.bands(t);
        let m = d.len();
        ComplexMatrix::from_fn(m, m, |i, j| {
            if i == j {
                C64::new(d[i], 0.0)
            } else if i + 1 == j || j + 1 == i {
                C64::new(e[i.min(j)], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    fn tridiagonal(&self, anchor: f64, offset: f64) -> Option<(Vec<f64>, Vec<f64>)> {
        Some(self.bands(anchor + offset))
    }
}

/// Dirichlet finite-difference discretisation of `−d²/dx² + V(t, x)` on the
/// interior nodes `x_j = a + j·h`, `h = (b − a)/(m + 1)`.
pub fn schrodinger_family(potential: Potential, grid_points: usize, interval: (f64, f64)) -> Result<MatrixFamily> {
    if grid_points < 3 {
        return Err(Error::Config(format!("schrodinger family needs at least 3 grid points, got {grid_points}")));
    }
    let (a, b) = interval;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Config(format!("invalid interval [{a}, {b}]")));
    }
    let h = (b - a) / (grid_points + 1) as f64;
    let nodes = (1..=grid_points).map(|j| a + j as f64 * h).collect();
    let eval = Schrodinger { potential, nodes, inv_h2: 1.0 / (h * h) };
    MatrixFamily::new(
        grid_points,
        (f64::NEG_INFINITY, f64::INFINITY),
        Structure::Hermitian,
        ClaimedClass::Smooth,
        Arc::new(eval),
    )
}

struct PolynomialEntries {
    n: usize,
    // Row-major, ascending powers of t.
    entries: Vec<Vec<C64>>,
}

impl FamilyEvaluator for PolynomialEntries {
    fn eval(&self, t: f64) -> ComplexMatrix {
        let data = self
            .entries
            .iter()
            .map(|p| p.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c))
            .collect::<Vec<_>>();
        ComplexMatrix::new(self.n, self.n, data).expect("polynomial entries are finite")
    }
}

/// Family whose entries are polynomials in `t`.
///
/// `entries[i][j]` holds the coefficients of entry (i, j) in ascending powers;
/// an empty list is the zero polynomial.
pub fn polynomial_entry_family(
    entries: &[Vec<Vec<C64>>],
    structure: Structure,
    domain: (f64, f64),
) -> Result<MatrixFamily> {
    let n = entries.len();
    let mut flat = Vec::with_capacity(n * n);
    for row in entries {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        for p in row {
            if p.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(Error::NonFinite);
            }
            flat.push(p.clone());
        }
    }
    MatrixFamily::new(n, domain, structure, ClaimedClass::Analytic, Arc::new(PolynomialEntries { n, entries: flat }))
}
