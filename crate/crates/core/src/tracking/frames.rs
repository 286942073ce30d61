use super::{CurveBundle, Event};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::{MatrixFamily, Structure};
use crate::linalg::{hermitian_eigen_with, normal_eigen_with, polar_unitary, vec_norm, ComplexMatrix, C64};
use crate::matching::bottleneck_assignment;
use crate::par::par_try_map;

struct Point {
    offset: f64,
    /// Curve values, in curve order.
    values: Vec<C64>,
    /// Eigenvector columns in curve order, before gauge fixing.
    raw: ComplexMatrix,
    matrix: ComplexMatrix,
}

fn decompose(family: &MatrixFamily, anchor: f64, offset: f64, tol: &Tolerances) -> Result<(ComplexMatrix, Vec<C64>, ComplexMatrix)> {
    let a = family.at_offset(anchor, offset);
    family.check_structure(anchor + offset, &a, tol)?;
    let dec = match family.structure() {
        Structure::Hermitian => hermitian_eigen_with(&a.hermitian_part(), tol)?,
        Structure::Normal => normal_eigen_with(&a, tol)?,
        Structure::General => return Err(Error::Config("eigenvector tracking needs a Hermitian or normal family".into())),
    };
    Ok((a, dec.eigenvalues, dec.eigenvectors))
}

/// Attaches eigenvector columns to the curve values `reference` by optimal assignment.
fn point(family: &MatrixFamily, anchor: f64, offset: f64, reference: &[C64], tol: &Tolerances) -> Result<Point> {
    let (matrix, values, vectors) = decompose(family, anchor, offset, tol)?;
    if values.len() != reference.len() {
        return Err(Error::DimensionMismatch { expected: reference.len(), found: values.len() });
    }
    let (_, perm) = bottleneck_assignment(reference, &values);
    let raw = vectors.select_columns(&perm);
    let values = perm.iter().map(|&j| values[j]).collect();
    Ok(Point { offset, values, raw, matrix })
}

/// Groups of curve indices whose values agree within `tol` (transitively).
fn clusters(values: &[C64], tol: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (ri, rj) = (root(&mut label, i), root(&mut label, j));
                label[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut label, i);
        if index_of[r] == usize::MAX {
            index_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of[r]].push(i);
    }
    groups
}

enum Aligned {
    Frame(ComplexMatrix, f64),
    Mismatch(f64),
}

/// Gauge-fixes `target.raw` against `prev` cluster by cluster (orthogonal Procrustes).
fn align(prev: &ComplexMatrix, target: &Point, tol: &Tolerances) -> Result<Aligned> {
    let scale = target.matrix.frobenius_norm();
    let mut frame = target.raw.clone();
    let mut worst = 1.0f64;
    for block in clusters(&target.values, tol.multiset * scale) {
        let f_new = target.raw.select_columns(&block);
        let f_old = prev.select_columns(&block);
        let (q, sigma_min) = polar_unitary(&f_new.adjoint_mul(&f_old))?;
        if sigma_min < tol.frame_restart {
            return Ok(Aligned::Mismatch(sigma_min));
        }
        worst = worst.min(sigma_min);
        let rotated = f_new.matmul(&q);
        for (c, &i) in block.iter().enumerate() {
            frame.set_column(i, &rotated.column(c));
        }
    }
    Ok(Aligned::Frame(frame, worst.min(1.0).acos()))
}

struct FrameWalker<'a> {
    family: &'a MatrixFamily,
    anchor: f64,
    refine: bool,
    tol: &'a Tolerances,
    events: Vec<Event>,
}

impl FrameWalker<'_> {
    /// Returns the gauge-fixed frame at `target` and the largest step angle.
    fn step(&mut self, prev: &Point, prev_frame: &ComplexMatrix, target: &Point, depth: usize) -> Result<(ComplexMatrix, f64)> {
        match align(prev_frame, target, self.tol)? {
            Aligned::Frame(f, angle) => Ok((f, angle)),
            Aligned::Mismatch(overlap) => {
                let mid = 0.5 * (prev.offset + target.offset);
                if !self.refine || depth >= self.tol.refine_depth || mid == prev.offset || mid == target.offset {
                    return Err(Error::ClusterMismatch { t: self.anchor + target.offset, overlap });
                }
                self.events.push(Event::FrameRefinement {
                    t_lo: self.anchor + prev.offset,
                    t_hi: self.anchor + target.offset,
                    depth: depth + 1,
                });
                let guess: Vec<C64> = prev.values.iter().zip(&target.values).map(|(a, b)| (a + b) * 0.5).collect();
                let mid_point = point(self.family, self.anchor, mid, &guess, self.tol)?;
                let (mid_frame, a1) = self.step(prev, prev_frame, &mid_point, depth + 1)?;
                let (frame, a2) = self.step(&mid_point, &mid_frame, target, depth + 1)?;
                Ok((frame, a1.max(a2)))
            }
        }
    }
}

fn check_residuals(p: &Point, frame: &ComplexMatrix, tol: &Tolerances, t: f64) -> Result<()> {
    let scale = p.matrix.frobenius_norm();
    for (i, &lambda) in p.values.iter().enumerate() {
        let u = frame.column(i);
        let au = p.matrix.mat_vec(&u);
        let r: Vec<C64> = au.iter().zip(&u).map(|(x, y)| x - y * lambda).collect();
        let defect = vec_norm(&r);
        if defect > tol.frame_residual * scale {
            return Err(Error::StructureViolation { t, detail: format!("eigenvector residual {defect:.3e} for curve {i}") });
        }
    }
    Ok(())
}

/// Adds gauge-fixed eigenvector frames to an eigenvalue bundle.
pub fn track_eigenvectors(family: &MatrixFamily, bundle: &CurveBundle) -> Result<CurveBundle> {
    track_eigenvectors_with(family, bundle, true, &Tolerances::default())
}

/// Within each cluster of equal eigenvalues the frame at `t_{k+1}` is the
/// rotation of the solver's eigenvectors closest to the frame at `t_k`.
/// A near-singular overlap means labels and eigenspaces disagree; the step is
/// bisected when `refine` is set and fails with `ClusterMismatch` otherwise.
pub fn track_eigenvectors_with(
    family: &MatrixFamily,
    bundle: &CurveBundle,
    refine: bool,
    tol: &Tolerances,
) -> Result<CurveBundle> {
    let grid = &bundle.grid;
    let anchor = grid.anchor();
    let indices: Vec<usize> = (0..grid.len()).collect();
    let points = par_try_map(&indices, |&k| point(family, anchor, grid.offsets()[k], &bundle.values_at(k), tol))?;
    let mut walker = FrameWalker { family, anchor, refine, tol, events: Vec::new() };
    let mut frames: Vec<ComplexMatrix> = Vec::with_capacity(points.len());
    let mut angles = Vec::with_capacity(points.len().saturating_sub(1));
    for (k, p) in points.iter().enumerate() {
        let frame = if k == 0 {
            p.raw.clone()
        } else {
            let (f, angle) = walker.step(&points[k - 1], &frames[k - 1], p, 0)?;
            angles.push(angle);
            f
        };
        check_residuals(p, &frame, tol, grid.t(k))?;
        frames.push(frame);
    }
    let mut out = bundle.clone();
    out.frames = Some(frames);
    out.gauge_angles = angles;
    out.events.extend(walker.events);
    Ok(out)
}
