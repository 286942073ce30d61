//! Sturm-sequence bisection for real symmetric tridiagonal matrices.
//!
//! Used by the tracker for tridiagonal families (finite-difference
//! Schrödinger operators), where Jacobi would fill in the band and cost O(n³)
//! per grid point.

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = if i == 0 { diag[0] - x } else { diag[i] - x - e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs() + f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues in ascending order.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len(), n.saturating_sub(1), "off-diagonal length");
    if n == 0 {
        return Vec::new();
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = f64::EPSILON * (lo.abs().max(hi.abs()) + 1e-300) * 4.0;
    lo -= pad;
    hi += pad;
    (0..n).map(|k| kth_eigenvalue(diag, off, k, lo, hi)).collect()
}

fn kth_eigenvalue(diag: &[f64], off: &[f64], k: usize, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_laplacian() {
        let n = 50;
        let d = vec![2.0; n];
        let e = vec![-1.0; n - 1];
        let ev = tridiagonal_eigenvalues(&d, &e);
        for (k, &x) in ev.iter().enumerate() {
            let theta = (k + 1) as f64 * std::f64::consts::PI / (2.0 * (n + 1) as f64);
            let exact = 4.0 * theta.sin().powi(2);
            assert!((x - exact).abs() < 1e-13, "{k}: {x} vs {exact}");
        }
    }

    #[test]
    fn agrees_with_jacobi() {
        let d = [1.0, -2.0, 0.5, 3.0, 0.0];
        let e = [0.3, 1.0, -0.7, 0.01];
        let ev = tridiagonal_eigenvalues(&d, &e);
        let m = crate::linalg::ComplexMatrix::from_fn(5, 5, |i, j| {
            let v = if i == j {
                d[i]
            } else if i.abs_diff(j) == 1 {
                e[i.min(j)]
            } else {
                0.0
            };
            crate::linalg::C64::new(v, 0.0)
        });
        let jac = crate::linalg::hermitian_eigen(&m).unwrap().real_eigenvalues();
        for (a, b) in ev.iter().zip(&jac) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
