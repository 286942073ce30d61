//! Estimation of the power-substitution order N from the branching of root clusters.

use serde::Serialize;

use super::{PolynomialFamily, PowerSubstitution};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::MatrixFamily;
use crate::linalg::C64;
use crate::matching::bottleneck_assignment;
use crate::tracking::eigen_sample;

const STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Leading exponent `p/q` of a cluster's diameter `D(h) ~ h^{p/q}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterExponent {
    /// Number of roots meeting at t0.
    pub size: usize,
    pub center: (f64, f64),
    /// Fitted log-log slope; `None` when the cluster does not split.
    pub slope: Option<f64>,
    pub p: usize,
    pub q: usize,
    /// Largest deviation from the fitted line, in decades.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchOrder {
    /// 0 for t0 + s^N, 1 for t0 − s^N.
    pub epsilon: u8,
    pub order: usize,
    pub clusters: Vec<ClusterExponent>,
}

/// Branching orders on both sides of t0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstitutionOrder {
    pub t0: f64,
    /// Least common multiple of both branch orders.
    pub order: usize,
    pub branches: [BranchOrder; 2],
}

impl SubstitutionOrder {
    pub fn substitution(&self, epsilon: u8) -> PowerSubstitution {
        PowerSubstitution { t0: self.t0, n: self.order, epsilon: epsilon.min(1) }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Groups of indices whose values lie within `tol` of each other (transitively).
fn clusters(values: &[C64], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; values.len()];
    for i in 0..values.len() {
        if assigned[i] {
            continue;
        }
        let mut group = vec![i];
        assigned[i] = true;
        let mut head = 0;
        while head < group.len() {
            let g = group[head];
            for j in 0..values.len() {
                if !assigned[j] && (values[j] - values[g]).norm() <= tol {
                    assigned[j] = true;
                    group.push(j);
                }
            }
            head += 1;
        }
        group.sort_unstable();
        groups.push(group);
    }
    groups
}

fn diameter(values: &[C64]) -> f64 {
    let mut d = 0.0f64;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            d = d.max((values[i] - values[j]).norm());
        }
    }
    d
}

/// Least-squares line through (x, y); returns (slope, max |residual|).
fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let residual = x.iter().zip(y).map(|(a, b)| (b - (my + slope * (a - mx))).abs()).fold(0.0, f64::max);
    (slope, residual)
}

fn rational(e: f64, k_max: usize) -> Option<(usize, usize)> {
    (1..=k_max).find_map(|q| {
        let p = (e * q as f64).round();
        if p >= 0.0 && (e - p / q as f64).abs() <= 0.01 {
            Some((p as usize, q))
        } else {
            None
        }
    })
}

/// Shared estimator: `roots(t)` returns the unordered roots (or eigenvalues) at t.
///
/// Roots within `1e-5 · R` of each other at t0 form clusters (R is the largest
/// root modulus near t0). For each cluster and each side σ = ±, the cluster
/// diameter D(h) at t0 + σh, h ∈ {1e-2, 1e-3, 1e-4}, is fitted by a line in
/// log-log scale; its slope is rounded to the first p/q with q ≤ `k_max`
/// within 0.01. A branch's order is the lcm of its denominators.
pub fn estimate_order_from_roots<F>(roots: F, t0: f64, k_max: usize, tol: &Tolerances) -> Result<SubstitutionOrder>
where
    F: Fn(f64) -> Result<Vec<C64>>,
{
    let base = roots(t0)?;
    let mut samples = Vec::with_capacity(2);
    for sign in [1.0, -1.0] {
        let per_h = STEPS.iter().map(|&h| roots(t0 + sign * h)).collect::<Result<Vec<_>>>()?;
        samples.push(per_h);
    }
    let reach = samples
        .iter()
        .flatten()
        .chain(std::iter::once(&base))
        .flat_map(|v| v.iter().map(|z| z.norm()))
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let groups: Vec<Vec<usize>> = clusters(&base, 1e-5 * reach).into_iter().filter(|g| g.len() > 1).collect();
    let log_h: Vec<f64> = STEPS.iter().map(|h| h.log10()).collect();

    let mut branches = Vec::with_capacity(2);
    for (b, per_h) in samples.iter().enumerate() {
        let mut order = 1;
        let mut reports = Vec::new();
        for group in &groups {
            let mut diam = Vec::with_capacity(STEPS.len());
            for values in per_h {
                if values.len() != base.len() {
                    return Err(Error::DimensionMismatch { expected: base.len(), found: values.len() });
                }
                let (_, perm) = bottleneck_assignment(&base, values);
                let members: Vec<C64> = group.iter().map(|&i| values[perm[i]]).collect();
                diam.push(diameter(&members));
            }
            let center = group.iter().map(|&i| base[i]).sum::<C64>() / group.len() as f64;
            if diam.iter().all(|&d| d <= 1e-14 * reach) {
                // The roots stay together: a persistent multiple root needs no substitution.
                reports.push(ClusterExponent {
                    size: group.len(),
                    center: (center.re, center.im),
                    slope: None,
                    p: 0,
                    q: 1,
                    residual: 0.0,
                });
                continue;
            }
            if diam.iter().any(|&d| d <= 0.0) {
                return Err(Error::ExponentUnresolved(format!(
                    "cluster at {center} splits irregularly (diameters {diam:?})"
                )));
            }
            let log_d: Vec<f64> = diam.iter().map(|d| d.log10()).collect();
            let (slope, residual) = fit_line(&log_h, &log_d);
            if residual > tol.regression_residual {
                return Err(Error::ExponentUnresolved(format!(
                    "cluster at {center}: log-log residual {residual:.3e} exceeds {}",
                    tol.regression_residual
                )));
            }
            let (p, q) = rational(slope, k_max).ok_or_else(|| {
                Error::ExponentUnresolved(format!("cluster at {center}: slope {slope:.6} has no denominator ≤ {k_max}"))
            })?;
            order = lcm(order, q);
            reports.push(ClusterExponent {
                size: group.len(),
                center: (center.re, center.im),
                slope: Some(slope),
                p,
                q,
                residual,
            });
        }
        branches.push(BranchOrder { epsilon: b as u8, order, clusters: reports });
    }
    let order = lcm(branches[0].order, branches[1].order);
    let minus = branches.pop().expect("two branches");
    let plus = branches.pop().expect("two branches");
    Ok(SubstitutionOrder { t0, order, branches: [plus, minus] })
}

/// Branching order N of the roots of P near t0.
pub fn estimate_substitution_order(p: &PolynomialFamily, t0: f64, k_max: usize) -> Result<SubstitutionOrder> {
    estimate_substitution_order_with(p, t0, k_max, &Tolerances::default())
}

pub fn estimate_substitution_order_with(
    p: &PolynomialFamily,
    t0: f64,
    k_max: usize,
    tol: &Tolerances,
) -> Result<SubstitutionOrder> {
    estimate_order_from_roots(|t| Ok(p.roots_at(t)), t0, k_max, tol)
}

/// Branching order of the eigenvalues of a Hermitian or normal family near t0.
pub fn eigen_substitution_order(family: &MatrixFamily, t0: f64, k_max: usize) -> Result<SubstitutionOrder> {
    let tol = Tolerances::default();
    estimate_order_from_roots(|t| Ok(eigen_sample(family, t, 0.0, &tol)?.values), t0, k_max, &tol)
}
