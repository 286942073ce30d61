use serde::Serialize;

use super::{track_eigenvalues_with, CurveBundle};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::{Grid, MatrixFamily};
use crate::linalg::C64;

fn ascending(values: &[C64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].re.total_cmp(&values[b].re).then(values[a].im.total_cmp(&values[b].im)).then(a.cmp(&b)));
    idx
}

fn tracked_local(family: &MatrixFamily, anchor: f64, mut offsets: Vec<f64>) -> Result<CurveBundle> {
    offsets.sort_by(f64::total_cmp);
    offsets.dedup();
    let grid = Grid::local(anchor, offsets)?;
    track_eigenvalues_with(family, &grid, true, &Tolerances::default())
}

fn position(grid: &Grid, offset: f64) -> usize {
    grid.offsets().iter().position(|&o| o == offset).expect("offset is a grid point")
}

/// Central-difference derivative of curve `curve` (its rank in ascending order
/// at `anchor + offset − step`) at `anchor + offset`.
pub fn curve_derivative(family: &MatrixFamily, curve: usize, anchor: f64, offset: f64, step: f64) -> Result<C64> {
    if !(step > 0.0) {
        return Err(Error::Config("derivative step must be positive".into()));
    }
    let b = tracked_local(family, anchor, vec![offset - step, offset, offset + step])?;
    let i = *ascending(&b.values_at(0)).get(curve).ok_or_else(|| Error::Config(format!("no curve {curve}")))?;
    Ok((b.curves[i][2] - b.curves[i][0]) / (2.0 * step))
}

/// `|λ'(t + s) − λ'(t)| / s^α` for curve `curve` (rank in ascending order at
/// `t − δ`), with derivatives by central differences of step `δ = s/100`.
///
/// The point `t + s` is evaluated in the family's local chart at `t`, so `s`
/// may lie below the resolution of `t`.
pub fn hoelder_quotient(family: &MatrixFamily, curve: usize, t: f64, s: f64, alpha: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Config("hoelder quotient needs s > 0".into()));
    }
    let delta = 1e-2 * s;
    let mut offsets = vec![-delta, 0.0, delta, s - delta, s, s + delta];
    offsets.extend((1..16).map(|k| delta + (s - 2.0 * delta) * k as f64 / 16.0));
    let b = tracked_local(family, t, offsets)?;
    let i = *ascending(&b.values_at(0)).get(curve).ok_or_else(|| Error::Config(format!("no curve {curve}")))?;
    let grid = &b.grid;
    let value = |o: f64| b.curves[i][position(grid, o)];
    let d0 = (value(delta) - value(-delta)) / (2.0 * delta);
    let d1 = (value(s + delta) - value(s - delta)) / (2.0 * delta);
    Ok((d1 - d0).norm() / s.powf(alpha))
}

/// Derivative jumps at one grid point where the ascending order changes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingJump {
    pub index: usize,
    pub t: f64,
    /// |D⁺ − D⁻| of each sorted curve.
    pub sorted_jump: Vec<f64>,
    /// |D⁺ − D⁻| of each tracked curve.
    pub tracked_jump: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SortedComparison {
    /// Curves ordered ascending by (re, im) at every point.
    pub sorted: Vec<Vec<C64>>,
    pub tracked: Vec<Vec<C64>>,
    pub jumps: Vec<CrossingJump>,
}

impl SortedComparison {
    pub fn identical(&self) -> bool {
        self.sorted == self.tracked
    }
}

fn jump(curve: &[C64], x: &[f64], k: usize) -> f64 {
    let minus = (curve[k] - curve[k - 1]) / (x[k] - x[k - 1]);
    let plus = (curve[k + 1] - curve[k]) / (x[k + 1] - x[k]);
    (plus - minus).norm()
}

/// Ascending-sorted curves next to the tracked ones, with first-divided-difference
/// jumps at each interior grid point where the ascending order of the tracked
/// curves changes.
pub fn sorted_vs_smooth(bundle: &CurveBundle) -> SortedComparison {
    let k_len = bundle.grid.len();
    let n = bundle.curves.len();
    let orders: Vec<Vec<usize>> = (0..k_len).map(|k| ascending(&bundle.values_at(k))).collect();
    let mut sorted = vec![Vec::with_capacity(k_len); n];
    for (k, order) in orders.iter().enumerate() {
        for (rank, &i) in order.iter().enumerate() {
            sorted[rank].push(bundle.curves[i][k]);
        }
    }
    let x = bundle.grid.offsets();
    let min_gap = |k: usize| {
        let v = bundle.values_at(k);
        let mut g = f64::INFINITY;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                g = g.min((v[i] - v[j]).norm());
            }
        }
        g
    };
    // An order change shows up at consecutive candidate points; keep the one
    // with the smallest gap from each run.
    let candidates: Vec<usize> = (1..k_len.saturating_sub(1)).filter(|&k| orders[k - 1] != orders[k + 1]).collect();
    let mut picked: Vec<usize> = Vec::new();
    let mut run_start = 0;
    for c in 0..candidates.len() {
        let last_of_run = c + 1 == candidates.len() || candidates[c + 1] != candidates[c] + 1;
        if last_of_run {
            let best = candidates[run_start..=c]
                .iter()
                .copied()
                .min_by(|&a, &b| min_gap(a).total_cmp(&min_gap(b)).then(a.cmp(&b)))
                .expect("non-empty run");
            picked.push(best);
            run_start = c + 1;
        }
    }
    let jumps = picked
        .into_iter()
        .map(|k| CrossingJump {
            index: k,
            t: bundle.grid.t(k),
            sorted_jump: sorted.iter().map(|c| jump(c, x, k)).collect(),
            tracked_jump: bundle.curves.iter().map(|c| jump(c, x, k)).collect(),
        })
        .collect();
    SortedComparison { sorted, tracked: bundle.curves.clone(), jumps }
}

#[cfg(test)]
mod tests {
    use super::super::track_eigenvalues;
    use super::*;
    use crate::family::{paper_anchor, paper_example_family, paper_step, Structure};
    use crate::linalg::ComplexMatrix;

    fn diag(f: fn(f64) -> f64, g: fn(f64) -> f64) -> MatrixFamily {
        MatrixFamily::from_fn(2, (-1.0, 1.0), Structure::Hermitian, move |t| {
            ComplexMatrix::from_real_diagonal(&[f(t), g(t)])
        })
        .unwrap()
    }

    #[test]
    fn paper_quotients() {
        let f = paper_example_family(4).unwrap();
        let q = hoelder_quotient(&f, 1, paper_anchor(3), paper_step(3), 1.0).unwrap();
        assert!((q - 8.0 / 2f64.sqrt()).abs() < 0.01 * 8.0 / 2f64.sqrt(), "{q}");
        let q = hoelder_quotient(&f, 1, paper_anchor(4), paper_step(4), 0.5).unwrap();
        assert!((q - 4.0 / 2f64.sqrt()).abs() < 0.01 * 4.0 / 2f64.sqrt(), "{q}");
    }

    #[test]
    fn smooth_curve_quotient_vanishes() {
        let f = diag(|t| t * t, |t| -1.0 - t);
        for s in [0.1, 0.01] {
            let q = hoelder_quotient(&f, 1, 0.0, s, 0.5).unwrap();
            assert!((q - 2.0 * s.powf(0.5)).abs() < 1e-8, "{q}");
        }
        let d = curve_derivative(&f, 1, 0.5, 0.0, 1e-3).unwrap();
        assert!((d.re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sorted_curves_kink_tracked_do_not() {
        let f = diag(|t| t, |t| -t);
        let b = track_eigenvalues(&f, &Grid::uniform(-1.0, 1.0, 21).unwrap(), true).unwrap();
        let cmp = sorted_vs_smooth(&b);
        assert_eq!(cmp.jumps.len(), 1);
        let j = &cmp.jumps[0];
        assert!(j.t.abs() < 1e-15);
        assert!(j.sorted_jump.iter().all(|&x| (x - 2.0).abs() < 1e-12));
        assert!(j.tracked_jump.iter().all(|&x| x < 1e-12));
    }

    #[test]
    fn no_crossing_means_identical() {
        let f = diag(|t| t + 5.0, |t| -t);
        let b = track_eigenvalues(&f, &Grid::uniform(-1.0, 1.0, 11).unwrap(), true).unwrap();
        let cmp = sorted_vs_smooth(&b);
        assert!(cmp.jumps.is_empty());
        assert!(cmp.identical());
    }
}
