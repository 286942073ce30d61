use serde::Serialize;

use super::CurveBundle;
use crate::config::Tolerances;
use crate::linalg::C64;

/// A place where two curves meet or nearly meet.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingReport {
    pub t_star: f64,
    /// Grid interval bracketing `t_star`.
    pub bracket: (f64, f64),
    pub pair: (usize, usize),
    /// Smallest sampled |λ_i − λ_j| near the crossing.
    pub gap_min: f64,
    /// Contact order; `None` when no tested order is significant.
    pub order_estimate: Option<usize>,
    pub infinite_order_suspect: bool,
}

/// Least-squares polynomial fit of complex data in the variable `u`, by
/// Householder QR of the real Vandermonde matrix. Returns ascending coefficients.
fn poly_fit(u: &[f64], y: &[C64], degree: usize) -> Vec<C64> {
    let m = u.len();
    let p = degree + 1;
    let mut a: Vec<Vec<f64>> = u.iter().map(|&x| (0..p).map(|j| x.powi(j as i32)).collect()).collect();
    let mut re: Vec<f64> = y.iter().map(|z| z.re).collect();
    let mut im: Vec<f64> = y.iter().map(|z| z.im).collect();
    for k in 0..p {
        let norm = (k..m).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        for j in k..p {
            let s: f64 = v.iter().enumerate().map(|(r, vi)| vi * a[k + r][j]).sum::<f64>() * 2.0 / vv;
            for (r, vi) in v.iter().enumerate() {
                a[k + r][j] -= s * vi;
            }
        }
        for rhs in [&mut re, &mut im] {
            let s: f64 = v.iter().enumerate().map(|(r, vi)| vi * rhs[k + r]).sum::<f64>() * 2.0 / vv;
            for (r, vi) in v.iter().enumerate() {
                rhs[k + r] -= s * vi;
            }
        }
    }
    let mut coef = vec![C64::new(0.0, 0.0); p];
    for k in (0..p).rev() {
        let mut sr = re[k];
        let mut si = im[k];
        for j in k + 1..p {
            sr -= a[k][j] * coef[j].re;
            si -= a[k][j] * coef[j].im;
        }
        coef[k] = if a[k][k] != 0.0 { C64::new(sr / a[k][k], si / a[k][k]) } else { C64::new(0.0, 0.0) };
    }
    coef
}

fn horner(coef: &[C64], u: f64) -> C64 {
    coef.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * u + c)
}

/// Coefficients of the same polynomial expanded about `u0`.
fn reexpand(coef: &[C64], u0: f64) -> Vec<C64> {
    let p = coef.len();
    let mut out = coef.to_vec();
    // Repeated synthetic division.
    for k in 0..p {
        for j in (k..p - 1).rev() {
            let next = out[j + 1];
            out[j] += next * u0;
        }
    }
    out
}

/// Golden-section minimization of |f| on [a, b].
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

/// Crossings and near-crossings between tracked curves.
pub fn crossing_detect(bundle: &CurveBundle, gap_tol: f64) -> Vec<CrossingReport> {
    crossing_detect_with(bundle, gap_tol, &Tolerances::default())
}

/// For every pair whose gap `g = λ_i − λ_j` dips below `gap_tol · scale`, the
/// minimum is located on a local least-squares polynomial fit of degree
/// `tol.contact_max_order` and the fit is re-expanded there. The contact order
/// is the first Taylor coefficient `b_k` with `|b_k|·L^k ≥ tol.contact_threshold · max|g|`,
/// `L` being half the grid range. When no order up to the cap qualifies and the
/// sampled gap falls below `tol.flat_gap · scale`, a flat (infinite-order)
/// contact is suspected.
pub fn crossing_detect_with(bundle: &CurveBundle, gap_tol: f64, tol: &Tolerances) -> Vec<CrossingReport> {
    let grid = &bundle.grid;
    let k_len = grid.len();
    if k_len < 3 {
        return Vec::new();
    }
    let x = grid.offsets();
    let scale = bundle.scale();
    let half_range = 0.5 * (x[k_len - 1] - x[0]);
    let mut out = Vec::new();
    for i in 0..bundle.curves.len() {
        for j in i + 1..bundle.curves.len() {
            let g: Vec<C64> = (0..k_len).map(|k| bundle.curves[i][k] - bundle.curves[j][k]).collect();
            let mag: Vec<f64> = g.iter().map(|z| z.norm()).collect();
            let total = mag.iter().copied().fold(0.0, f64::max);
            let threshold = gap_tol * scale;
            let mut k = 0;
            while k < k_len {
                if mag[k] >= threshold {
                    k += 1;
                    continue;
                }
                let start = k;
                while k < k_len && mag[k] < threshold {
                    k += 1;
                }
                let run = start..k;
                let k_star = run.clone().fold(start, |best, m| if mag[m] < mag[best] { m } else { best });
                out.push(analyze(&g, &mag, x, k_star, (i, j), total, half_range, scale, grid.anchor(), tol));
            }
        }
    }
    out.sort_by(|a, b| a.t_star.total_cmp(&b.t_star).then(a.pair.cmp(&b.pair)));
    out
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    g: &[C64],
    mag: &[f64],
    x: &[f64],
    k_star: usize,
    pair: (usize, usize),
    total: f64,
    half_range: f64,
    scale: f64,
    anchor: f64,
    tol: &Tolerances,
) -> CrossingReport {
    let k_len = g.len();
    let k_max = tol.contact_max_order.max(1);
    let m = (2 * k_max + 1).min(k_len);
    let lo = k_star.saturating_sub(m / 2).min(k_len - m);
    let window = lo..lo + m;
    let center = x[k_star];
    let width = window.clone().map(|k| (x[k] - center).abs()).fold(0.0, f64::max);
    let u: Vec<f64> = window.clone().map(|k| (x[k] - center) / width).collect();
    let degree = k_max.min(m - 1);
    let coef = poly_fit(&u, &g[window.clone()], degree);

    let left = if k_star > 0 { x[k_star - 1] } else { x[k_star] };
    let right = if k_star + 1 < k_len { x[k_star + 1] } else { x[k_star] };
    let u_star = if mag[k_star] <= f64::EPSILON * scale {
        0.0
    } else {
        let (a, b) = ((left - center) / width, (right - center) / width);
        let best = golden_min(|v| horner(&coef, v).norm(), a, b);
        if horner(&coef, best).norm() < mag[k_star] {
            best
        } else {
            0.0
        }
    };
    let taylor = reexpand(&coef, u_star);
    let ratio = half_range / width;
    let order = (1..=degree).find(|&k| taylor[k].norm() * ratio.powi(k as i32) >= tol.contact_threshold * total);
    let gap_min = mag[k_star];
    CrossingReport {
        t_star: anchor + center + u_star * width,
        bracket: (anchor + left, anchor + right),
        pair,
        gap_min,
        order_estimate: order,
        infinite_order_suspect: order.is_none() && gap_min <= tol.flat_gap * scale,
    }
}

#[cfg(test)]
mod tests {
    use super::super::track_eigenvalues;
    use super::*;
    use crate::family::{Grid, MatrixFamily, Structure};
    use crate::linalg::ComplexMatrix;

    fn diag(f: fn(f64) -> f64, g: fn(f64) -> f64, points: usize) -> CurveBundle {
        let fam = MatrixFamily::from_fn(2, (-1.0, 1.0), Structure::Hermitian, move |t| {
            ComplexMatrix::from_real_diagonal(&[f(t), g(t)])
        })
        .unwrap();
        track_eigenvalues(&fam, &Grid::uniform(-1.0, 1.0, points).unwrap(), true).unwrap()
    }

    #[test]
    fn fit_recovers_polynomial() {
        let u: Vec<f64> = (0..9).map(|k| -1.0 + 0.25 * k as f64).collect();
        let y: Vec<C64> = u.iter().map(|&v| C64::new(1.0 - 2.0 * v + 3.0 * v * v, v)).collect();
        let c = poly_fit(&u, &y, 4);
        assert!((c[0].re - 1.0).abs() < 1e-12 && (c[1].re + 2.0).abs() < 1e-12 && (c[2].re - 3.0).abs() < 1e-12);
        assert!((c[1].im - 1.0).abs() < 1e-12 && c[3].norm() < 1e-12);
        let r = reexpand(&[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)], 2.0);
        assert_eq!(r, vec![C64::new(4.0, 0.0), C64::new(4.0, 0.0), C64::new(1.0, 0.0)]);
    }

    #[test]
    fn linear_crossing_order_one() {
        let r = crossing_detect(&diag(|t| t, |t| -t, 41), 1e-2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].order_estimate, Some(1));
        assert!(r[0].t_star.abs() < 1e-12);
        assert!(!r[0].infinite_order_suspect);
    }

    #[test]
    fn linear_crossing_between_grid_points() {
        let r = crossing_detect(&diag(|t| t, |t| -t, 40), 5e-2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].order_estimate, Some(1));
        assert!(r[0].t_star.abs() < 1e-10, "{}", r[0].t_star);
    }

    #[test]
    fn quadratic_contact_order_two() {
        let r = crossing_detect(&diag(|t| t * t, |t| -t * t, 41), 1e-2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].order_estimate, Some(2));
        // Cubic contact, labeled by hand.
        let grid = Grid::uniform(-1.0, 1.0, 41).unwrap();
        let cubic = CurveBundle {
            curves: vec![grid.points().iter().map(|&t| C64::new(t * t * t, 0.0)).collect(), vec![C64::new(0.0, 0.0); 41]],
            scales: vec![1.0; 41],
            grid,
            frames: None,
            gauge_angles: Vec::new(),
            events: Vec::new(),
        };
        assert_eq!(crossing_detect(&cubic, 1e-2)[0].order_estimate, Some(3));
    }

    #[test]
    fn flat_contact_is_suspected() {
        let r = crossing_detect(&diag(|t| if t == 0.0 { 0.0 } else { (-1.0 / (t * t)).exp() }, |_| 0.0, 201), 1e-2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].order_estimate, None);
        assert!(r[0].infinite_order_suspect);
    }

    #[test]
    fn separated_curves_have_no_crossing() {
        assert!(crossing_detect(&diag(|t| t + 3.0, |t| -t, 21), 1e-2).is_empty());
    }
}
