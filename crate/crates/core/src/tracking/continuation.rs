use std::collections::VecDeque;

use super::Event;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::Grid;
use crate::linalg::C64;
use crate::matching::bottleneck_assignment;
use crate::par::par_try_map;

/// Unordered values at one parameter point with the scale used for tolerances.
#[derive(Debug, Clone)]
pub(crate) struct Sample {
    pub values: Vec<C64>,
    pub scale: f64,
}

/// Lagrange extrapolation through the stored points.
fn extrapolate(history: &VecDeque<(f64, Vec<C64>)>, x: f64) -> Vec<C64> {
    let n = history[0].1.len();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (j, (xj, yj)) in history.iter().enumerate() {
        let mut w = 1.0;
        for (m, (xm, _)) in history.iter().enumerate() {
            if m != j {
                w *= (x - xm) / (xj - xm);
            }
        }
        for (o, y) in out.iter_mut().zip(yj) {
            *o += y * w;
        }
    }
    out
}

fn min_gap(values: &[C64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}

struct Walker<'a, F> {
    anchor: f64,
    refine: bool,
    tol: &'a Tolerances,
    solve: &'a F,
    history: VecDeque<(f64, Vec<C64>)>,
    events: Vec<Event>,
}

impl<F> Walker<'_, F>
where
    F: Fn(f64) -> Result<Sample> + Sync,
{
    fn advance(&mut self, target: f64, sample: &Sample, depth: usize) -> Result<()> {
        let last = self.history.back().expect("seeded history").0;
        let predicted = extrapolate(&self.history, target);
        let (distance, perm) = bottleneck_assignment(&predicted, &sample.values);
        let labeled: Vec<C64> = perm.iter().map(|&j| sample.values[j]).collect();
        let gap = min_gap(&labeled);
        let noise = self.tol.multiset * sample.scale;
        let last_values = &self.history.back().expect("seeded history").1;
        let movement = predicted.iter().zip(last_values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        // With two or more history points a prediction error comparable to the
        // predicted movement means the curves are not resolved by the step.
        let unresolved = self.history.len() >= 2 && distance > 0.5 * movement;
        let ambiguous = distance > noise && (distance > 0.5 * gap || unresolved);
        if ambiguous && self.refine && depth < self.tol.refine_depth {
            let mid = 0.5 * (last + target);
            if mid != last && mid != target {
                self.events.push(Event::Refinement {
                    t_lo: self.anchor + last,
                    t_hi: self.anchor + target,
                    depth: depth + 1,
                });
                let mid_sample = (self.solve)(mid)?;
                self.advance(mid, &mid_sample, depth + 1)?;
                return self.advance(target, sample, depth + 1);
            }
        }
        if ambiguous {
            self.events.push(Event::Ambiguity { t_lo: self.anchor + last, t_hi: self.anchor + target, distance, gap });
        }
        if self.history.len() == 3 {
            self.history.pop_front();
        }
        self.history.push_back((target, labeled));
        Ok(())
    }
}

/// Labels the values returned by `solve(offset)` into curves along `grid`.
///
/// Returns `curves[i][k]`, the per-point scales and the event log. Values at
/// the grid points are computed in parallel; the labeling is a sequential fold.
pub(crate) fn continue_curves<F>(
    grid: &Grid,
    refine: bool,
    tol: &Tolerances,
    solve: F,
) -> Result<(Vec<Vec<C64>>, Vec<f64>, Vec<Event>)>
where
    F: Fn(f64) -> Result<Sample> + Sync,
{
    let samples = par_try_map(grid.offsets(), |&off| solve(off))?;
    let n = samples.first().map_or(0, |s| s.values.len());
    if let Some(bad) = samples.iter().find(|s| s.values.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.values.len() });
    }
    let mut curves = vec![Vec::with_capacity(grid.len()); n];
    let mut walker = Walker {
        anchor: grid.anchor(),
        refine,
        tol,
        solve: &solve,
        history: VecDeque::with_capacity(3),
        events: Vec::new(),
    };
    for (k, (sample, &off)) in samples.iter().zip(grid.offsets()).enumerate() {
        if k == 0 {
            walker.history.push_back((off, sample.values.clone()));
        } else {
            walker.advance(off, sample, 0)?;
        }
        let labeled = &walker.history.back().expect("just pushed").1;
        for (curve, &v) in curves.iter_mut().zip(labeled) {
            curve.push(v);
        }
    }
    let scales = samples.iter().map(|s| s.scale).collect();
    Ok((curves, scales, walker.events))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(xs: &[f64]) -> Vec<C64> {
        xs.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn quadratic_extrapolation_is_exact_on_parabolas() {
        let h: VecDeque<(f64, Vec<C64>)> =
            [0.0, 0.5, 2.0].iter().map(|&x| (x, real(&[x * x, 1.0 - x]))).collect();
        let p = extrapolate(&h, 3.0);
        assert!((p[0].re - 9.0).abs() < 1e-12);
        assert!((p[1].re + 2.0).abs() < 1e-12);
    }

    #[test]
    fn sorted_input_is_relabeled_through_crossing() {
        let grid = Grid::uniform(-1.0, 1.0, 11).unwrap();
        let (curves, _, events) = continue_curves(&grid, true, &Tolerances::default(), |t| {
            let mut v = [2.0 * t, -t + 0.1];
            v.sort_by(f64::total_cmp);
            Ok(Sample { values: real(&v), scale: 1.0 })
        })
        .unwrap();
        for (k, t) in grid.points().into_iter().enumerate() {
            assert!((curves[0][k].re - 2.0 * t).abs() < 1e-12, "t = {t}");
        }
        assert!(events.iter().all(|e| matches!(e, Event::Refinement { .. })));
    }

    #[test]
    fn ambiguity_logged_without_refinement() {
        let grid = Grid::uniform(-1.0, 1.0, 3).unwrap();
        let (_, _, events) = continue_curves(&grid, false, &Tolerances::default(), |t| {
            let mut v = [t, -t + 0.05];
            v.sort_by(f64::total_cmp);
            Ok(Sample { values: real(&v), scale: 1.0 })
        })
        .unwrap();
        assert!(events.iter().any(|e| matches!(e, Event::Ambiguity { .. })));
    }
}
