//! Numerical tolerances shared by every module.
//!
//! All values are relative unless noted; the scale is the Frobenius norm of
//! the matrix at hand. The CLI exposes each field as a `--tol key=value` key.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// ‖A − A*‖_F allowed for Hermitian inputs.
    pub hermitian_check: f64,
    /// ‖AA* − A*A‖_F allowed for normal inputs, relative to ‖A‖_F².
    pub normal_check: f64,
    /// Accepted eigen-decomposition residual ‖AV − VΛ‖_F.
    pub eigen_residual: f64,
    /// Jacobi sweep cap.
    pub max_sweeps: usize,
    /// Gap below which eigenvalues of the Hermitian part form a cluster.
    pub normal_cluster: f64,
    /// Minimum σ_min/σ_max for Gram–Schmidt inputs.
    pub independence: f64,
    /// LU pivot threshold.
    pub lu_pivot: f64,
    /// Resolvent pivot threshold (distance of z to the spectrum).
    pub resolvent_pivot: f64,
    /// Minimum distance of the spectrum to a contour.
    pub contour_clearance: f64,
    /// Stop when doubling the quadrature nodes changes P by less than this (absolute, Frobenius).
    pub quadrature_change: f64,
    /// Quadrature node cap.
    pub quadrature_max_nodes: usize,
    /// Accepted ‖P² − P‖_F and ‖P − P*‖_F.
    pub projector_defect: f64,
    /// σ_min/σ_max of the projected seeds below which a frame restarts.
    pub frame_restart: f64,
    /// ‖(I − FF*)AF‖ allowed when compressing.
    pub invariance: f64,
    /// Bisection depth cap for label refinement.
    pub refine_depth: usize,
    /// Multiset fidelity of tracked curves against the eigensolver.
    pub multiset: f64,
    /// Normalized Taylor-coefficient threshold for contact orders.
    pub contact_threshold: f64,
    /// Largest contact order tested.
    pub contact_max_order: usize,
    /// Gap below which a vanishing crossing is suspected to be of infinite order.
    pub flat_gap: f64,
    /// Largest denominator accepted for branching exponents.
    pub substitution_max_denominator: usize,
    /// Accepted log-log regression residual for branching exponents.
    pub regression_residual: f64,
    /// Per-column eigenvector residual allowed for tracked frames.
    pub frame_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian_check: 1e-12,
            normal_check: 1e-10,
            eigen_residual: 1e-10,
            max_sweeps: 30,
            normal_cluster: 1e-8,
            independence: 1e-8,
            lu_pivot: 1e-14,
            resolvent_pivot: 1e-10,
            contour_clearance: 1e-8,
            quadrature_change: 1e-10,
            quadrature_max_nodes: 4096,
            projector_defect: 1e-8,
            frame_restart: 1e-6,
            invariance: 1e-8,
            refine_depth: 12,
            multiset: 1e-9,
            contact_threshold: 1e-4,
            contact_max_order: 8,
            flat_gap: 1e-12,
            substitution_max_denominator: 12,
            regression_residual: 1e-2,
            frame_residual: 1e-8,
        }
    }
}

impl Tolerances {
    /// Overrides one field by name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let mut json = serde_json::to_value(*self).map_err(|e| Error::Config(e.to_string()))?;
        let map = json.as_object_mut().expect("tolerances serialize to an object");
        let slot = map
            .get_mut(key)
            .ok_or_else(|| Error::Config(format!("unknown tolerance key `{key}`")))?;
        let parsed: serde_json::Value = if slot.is_u64() {
            value
                .parse::<u64>()
                .map(Into::into)
                .map_err(|_| Error::Config(format!("tolerance `{key}` expects an integer, got `{value}`")))?
        } else {
            let v = value
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("tolerance `{key}` expects a number, got `{value}`")))?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Config(format!("tolerance `{key}` must be finite and non-negative")));
            }
            serde_json::Number::from_f64(v).expect("finite").into()
        };
        *slot = parsed;
        *self = serde_json::from_value(json).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    /// Applies `key=value` overrides in order.
    pub fn with_overrides<'a>(mut self, pairs: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        for pair in pairs {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got `{pair}`")))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(self)
    }
}
