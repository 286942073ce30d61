//! Resolvents, contour-integral spectral projectors and the local frames
//! built from them.
//!
//! `P = −(1/2πi) ∮ (A − z)⁻¹ dz` is approximated by the trapezoid rule on a
//! circle (nested node doubling) or by per-edge Gauss–Legendre panels on a
//! polygon.

use std::f64::consts::PI;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::{Grid, MatrixFamily, Structure};
use crate::linalg::{
    gram_schmidt_with, hermitian_eigen, independence_ratio, normal_eigen_with, right_singular, ComplexMatrix,
    LuFactorization, C64,
};
use crate::par::par_map;

const MIN_NODES: usize = 16;

#[allow(clippy::excessive_precision)]
const GL8_X: [f64; 4] = [0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363];
#[allow(clippy::excessive_precision)]
const GL8_W: [f64; 4] = [0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763];

#[derive(Debug, Clone, PartialEq)]
pub enum ContourKind {
    Circle { center: C64, radius: f64 },
    /// Counter-clockwise simple polygon.
    Polygon { vertices: Vec<C64> },
}

/// Closed integration contour with its starting node count.
///
/// For circles `nodes` is the trapezoid node count; for polygons each edge is
/// split into `nodes / 16` panels of 8 Gauss–Legendre points.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    kind: ContourKind,
    nodes: usize,
}

fn cross(a: C64, b: C64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(p1: C64, p2: C64, q1: C64, q2: C64) -> bool {
    let d1 = cross(p2 - p1, q1 - p1);
    let d2 = cross(p2 - p1, q2 - p1);
    let d3 = cross(q2 - q1, p1 - q1);
    let d4 = cross(q2 - q1, p2 - q1);
    d1 * d2 <= 0.0 && d3 * d4 <= 0.0
}

fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let s = if len2 > 0.0 { (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0) } else { 0.0 };
    (z - (a + d * s)).norm()
}

impl Contour {
    pub fn circle(center: C64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::InvalidContour(format!("circle needs a finite positive radius, got {radius}")));
        }
        Ok(Self { kind: ContourKind::Circle { center, radius }, nodes: MIN_NODES })
    }

    pub fn polygon(mut vertices: Vec<C64>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidContour("polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidContour("non-finite polygon vertex".into()));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidContour(format!("repeated vertex {i}")));
            }
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_cross(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n]) {
                    return Err(Error::InvalidContour(format!("edges {i} and {j} intersect")));
                }
            }
        }
        let area: f64 = (0..n).map(|i| cross(vertices[i], vertices[(i + 1) % n])).sum::<f64>() / 2.0;
        if area == 0.0 {
            return Err(Error::InvalidContour("degenerate polygon".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        Ok(Self { kind: ContourKind::Polygon { vertices }, nodes: MIN_NODES })
    }

    pub fn with_nodes(mut self, nodes: usize) -> Result<Self> {
        if nodes < MIN_NODES || !nodes.is_power_of_two() {
            return Err(Error::InvalidContour(format!("node count must be a power of two ≥ 16, got {nodes}")));
        }
        self.nodes = nodes;
        Ok(self)
    }

    pub fn kind(&self) -> &ContourKind {
        &self.kind
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Distance from `z` to the curve.
    pub fn distance(&self, z: C64) -> f64 {
        match &self.kind {
            ContourKind::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            ContourKind::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).map(|i| segment_distance(z, vertices[i], vertices[(i + 1) % n])).fold(f64::INFINITY, f64::min)
            }
        }
    }

    pub fn encloses(&self, z: C64) -> bool {
        match &self.kind {
            ContourKind::Circle { center, radius } => (z - center).norm() < *radius,
            ContourKind::Polygon { vertices } => {
                let n = vertices.len();
                let mut inside = false;
                for i in 0..n {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    if (a.im > z.im) != (b.im > z.im) {
                        let x = a.re + (z.im - a.im) / (b.im - a.im) * (b.re - a.re);
                        if z.re < x {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
        }
    }

    /// Quadrature nodes `z_k` and weights `w_k` with `P ≈ Σ w_k (A − z_k)⁻¹`.
    /// For circles only the nodes not present at `m / 2` are returned when `new_only`.
    fn rule(&self, m: usize, new_only: bool) -> Vec<(C64, C64)> {
        match &self.kind {
            ContourKind::Circle { center, radius } => {
                let (start, step) = if new_only { (1, 2) } else { (0, 1) };
                (start..m)
                    .step_by(step)
                    .map(|k| {
                        let e = C64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
                        (center + e * radius, -e * (radius / m as f64))
                    })
                    .collect()
            }
            ContourKind::Polygon { vertices } => {
                let panels = (m / MIN_NODES).max(1);
                let n = vertices.len();
                let factor = C64::new(0.0, 1.0 / (2.0 * PI));
                let mut out = Vec::with_capacity(n * panels * 8);
                for i in 0..n {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    let d = (b - a) / panels as f64;
                    for p in 0..panels {
                        let mid = a + d * (p as f64 + 0.5);
                        for (x, w) in GL8_X.iter().zip(GL8_W) {
                            for sgn in [-1.0, 1.0] {
                                // −1/(2πi) = i/(2π)
                                out.push((mid + d * (0.5 * sgn * x), factor * d * (0.5 * w)));
                            }
                        }
                    }
                }
                out
            }
        }
    }
}

/// `(A − zI)⁻¹` by LU column solves.
pub fn resolvent(a: &ComplexMatrix, z: C64) -> Result<ComplexMatrix> {
    resolvent_with(a, z, &Tolerances::default())
}

pub fn resolvent_with(a: &ComplexMatrix, z: C64, tol: &Tolerances) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let shifted = a.shifted(z);
    let scale = a.frobenius_norm().max(z.norm()).max(f64::MIN_POSITIVE);
    // Pivot threshold relative to ‖A‖ rather than ‖A − z‖.
    let rel = tol.resolvent_pivot * scale / shifted.frobenius_norm().max(f64::MIN_POSITIVE);
    match LuFactorization::new(&shifted, rel) {
        Ok(lu) => Ok(lu.inverse()),
        Err(Error::Singular { .. }) => Err(Error::SpectrumHit { re: z.re, im: z.im }),
        Err(e) => Err(e),
    }
}

/// A quadrature approximation of a spectral projector with its quality measures.
#[derive(Debug, Clone)]
pub struct Projector {
    pub matrix: ComplexMatrix,
    pub rank: usize,
    pub idempotency_defect: f64,
    pub hermitian_defect: f64,
    /// ‖AP − PA‖_F.
    pub commutator_defect: f64,
    pub trace: C64,
    /// Nodes used by the accepted approximation.
    pub nodes: usize,
    /// ‖P_{2M} − P_M‖_F at acceptance.
    pub last_change: f64,
    /// Ratio of the last two changes; small in the asymptotic regime.
    pub convergence_ratio: f64,
}

fn spectrum(a: &ComplexMatrix, structure: Structure, tol: &Tolerances) -> Result<Option<Vec<C64>>> {
    Ok(match structure {
        Structure::Hermitian => Some(hermitian_eigen(&a.hermitian_part())?.eigenvalues),
        Structure::Normal => Some(normal_eigen_with(a, tol)?.eigenvalues),
        Structure::General => None,
    })
}

fn projector_rank(p: &ComplexMatrix, hermitian_defect: f64, trace: C64) -> Result<usize> {
    if hermitian_defect <= 1e-6 {
        let dec = hermitian_eigen(&p.hermitian_part())?;
        Ok(dec.eigenvalues.iter().filter(|z| (z.re - 1.0).abs() < 0.5).count())
    } else {
        Ok(trace.re.round().max(0.0) as usize)
    }
}

/// Projector of a single matrix. `structure` selects the clearance check
/// (general matrices rely on the resolvent pivot test alone); `t` labels errors.
pub fn projector_of(
    a: &ComplexMatrix,
    contour: &Contour,
    structure: Structure,
    t: f64,
    tol: &Tolerances,
) -> Result<Projector> {
    let scale = a.frobenius_norm();
    if let Some(values) = spectrum(a, structure, tol)? {
        let distance = values.iter().map(|&z| contour.distance(z)).fold(f64::INFINITY, f64::min);
        if distance <= tol.contour_clearance * scale {
            return Err(Error::EigenvalueOnContour { t, distance });
        }
    }
    let n = a.rows();
    let accumulate = |rule: &[(C64, C64)]| -> Result<ComplexMatrix> {
        let mut sum = ComplexMatrix::zeros(n, n);
        for &(z, w) in rule {
            let r = resolvent_with(a, z, tol)?;
            sum = &sum + &r.scale(w);
        }
        Ok(sum)
    };
    let circle = matches!(contour.kind, ContourKind::Circle { .. });
    let mut m = contour.nodes;
    let mut p = accumulate(&contour.rule(m, false))?;
    let mut prev_change = f64::NAN;
    loop {
        if 2 * m > tol.quadrature_max_nodes.max(contour.nodes) {
            let last = prev_change;
            return Err(Error::QuadratureStall { nodes: m, last_change: last });
        }
        let next = if circle {
            &p.scale_real(0.5) + &accumulate(&contour.rule(2 * m, true))?
        } else {
            accumulate(&contour.rule(2 * m, false))?
        };
        let change = (&next - &p).frobenius_norm();
        m *= 2;
        p = next;
        let ratio = change / prev_change;
        prev_change = change;
        if change < tol.quadrature_change * p.frobenius_norm().max(1.0) {
            let p2 = p.matmul(&p);
            let idempotency_defect = (&p2 - &p).frobenius_norm();
            let hermitian_defect = p.hermitian_defect();
            let commutator_defect = (&a.matmul(&p) - &p.matmul(a)).frobenius_norm();
            let trace = p.trace();
            if idempotency_defect > tol.projector_defect * p.frobenius_norm().max(1.0) {
                return Err(Error::ProjectorDefect { defect: idempotency_defect });
            }
            let rank = projector_rank(&p, hermitian_defect, trace)?;
            return Ok(Projector {
                matrix: p,
                rank,
                idempotency_defect,
                hermitian_defect,
                commutator_defect,
                trace,
                nodes: m,
                last_change: change,
                convergence_ratio: ratio,
            });
        }
    }
}

/// Riesz projector of `A(t)` for the eigenvalues enclosed by `contour`.
pub fn riesz_projector(family: &MatrixFamily, t: f64, contour: &Contour) -> Result<Projector> {
    riesz_projector_with(family, t, 0.0, contour, &Tolerances::default())
}

/// As [`riesz_projector`], at the chart point `anchor + offset`.
pub fn riesz_projector_with(
    family: &MatrixFamily,
    anchor: f64,
    offset: f64,
    contour: &Contour,
    tol: &Tolerances,
) -> Result<Projector> {
    let t = anchor + offset;
    let a = family.at_offset(anchor, offset);
    family.check_structure(t, &a, tol)?;
    projector_of(&a, contour, family.structure(), t, tol)
}

/// Circle around `members` of `eigenvalues`: centered at their mean, with the
/// radius midway between the farthest member and the nearest non-member.
pub fn cluster_contour(eigenvalues: &[C64], members: &[usize]) -> Result<Contour> {
    if members.is_empty() || members.iter().any(|&i| i >= eigenvalues.len()) {
        return Err(Error::InvalidContour("cluster members must index the spectrum".into()));
    }
    let center = members.iter().map(|&i| eigenvalues[i]).sum::<C64>() / members.len() as f64;
    let inner = members.iter().map(|&i| (eigenvalues[i] - center).norm()).fold(0.0, f64::max);
    let outer = (0..eigenvalues.len())
        .filter(|i| !members.contains(i))
        .map(|i| (eigenvalues[i] - center).norm())
        .fold(f64::INFINITY, f64::min);
    let radius = if outer.is_finite() {
        if outer <= inner * (1.0 + 1e-12) {
            return Err(Error::InvalidContour("cluster is not separated from the rest of the spectrum".into()));
        }
        0.5 * (inner + outer)
    } else {
        let scale = eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
        inner + 0.5 * inner.max(scale).max(1e-300)
    };
    Contour::circle(center, radius)
}

/// Cluster contour built from the spectrum of `A(t0)`; `members` index the
/// eigenvalues in the solver's ascending order.
pub fn auto_contour(family: &MatrixFamily, t0: f64, members: &[usize]) -> Result<Contour> {
    let a = family.at(t0);
    let values = spectrum(&a, family.structure(), &Tolerances::default())?
        .ok_or_else(|| Error::Config("automatic contours need a Hermitian or normal family".into()))?;
    cluster_contour(&values, members)
}

/// Projectors along a grid.
#[derive(Debug, Clone)]
pub struct RankProfile {
    pub grid: Grid,
    pub ranks: Vec<usize>,
    pub projectors: Vec<Projector>,
}

impl RankProfile {
    pub fn is_constant(&self) -> bool {
        self.ranks.windows(2).all(|w| w[0] == w[1])
    }
}

fn projectors_on(family: &MatrixFamily, grid: &Grid, contour: &Contour, tol: &Tolerances) -> Result<Vec<Projector>> {
    let results = par_map(grid.offsets(), |&off| riesz_projector_with(family, grid.anchor(), off, contour, tol));
    results.into_iter().collect()
}

/// Projector ranks along `grid`; a change of rank means the contour stopped
/// isolating the cluster and is reported as `ContourBreach`.
pub fn rank_constancy_scan(family: &MatrixFamily, grid: &Grid, contour: &Contour) -> Result<RankProfile> {
    rank_constancy_scan_with(family, grid, contour, &Tolerances::default())
}

pub fn rank_constancy_scan_with(
    family: &MatrixFamily,
    grid: &Grid,
    contour: &Contour,
    tol: &Tolerances,
) -> Result<RankProfile> {
    let projectors = projectors_on(family, grid, contour, tol)?;
    let ranks: Vec<usize> = projectors.iter().map(|p| p.rank).collect();
    if let Some(k) = ranks.windows(2).position(|w| w[0] != w[1]) {
        return Err(Error::ContourBreach {
            t_lo: grid.t(k),
            t_hi: grid.t(k + 1),
            rank_before: ranks[k],
            rank_after: ranks[k + 1],
        });
    }
    Ok(RankProfile { grid: grid.clone(), ranks, projectors })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameRestart {
    pub index: usize,
    pub t: f64,
    /// σ_min/σ_max of the projected seeds that triggered the restart.
    pub ratio: f64,
}

/// Orthonormal frames of the projector ranges along a grid.
#[derive(Debug, Clone)]
pub struct FrameBundle {
    pub grid: Grid,
    pub rank: usize,
    pub frames: Vec<ComplexMatrix>,
    pub restarts: Vec<FrameRestart>,
}

fn dominant_seeds(p: &ComplexMatrix, rank: usize) -> Result<Vec<Vec<C64>>> {
    let (_, w) = right_singular(p)?;
    Ok((0..rank).map(|j| w.column(j)).collect())
}

/// Frames `gram_schmidt(P(t_k)v₁, …, P(t_k)v_N)` with fixed seeds `v_i`.
///
/// Seeds default to the dominant right singular vectors of `P(t₀)`. When the
/// projected seeds lose independence below `tol.frame_restart`, new seeds are
/// taken from `P(t_k)` and a restart is recorded.
pub fn local_frame(
    family: &MatrixFamily,
    grid: &Grid,
    contour: &Contour,
    seeds: Option<Vec<Vec<C64>>>,
) -> Result<FrameBundle> {
    local_frame_with(family, grid, contour, seeds, &Tolerances::default())
}

pub fn local_frame_with(
    family: &MatrixFamily,
    grid: &Grid,
    contour: &Contour,
    seeds: Option<Vec<Vec<C64>>>,
    tol: &Tolerances,
) -> Result<FrameBundle> {
    let profile = rank_constancy_scan_with(family, grid, contour, tol)?;
    let rank = profile.ranks[0];
    let mut seeds = match seeds {
        Some(s) => {
            if s.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: s.len() });
            }
            s
        }
        None => dominant_seeds(&profile.projectors[0].matrix, rank)?,
    };
    let mut frames = Vec::with_capacity(grid.len());
    let mut restarts = Vec::new();
    for (k, proj) in profile.projectors.iter().enumerate() {
        let mut projected: Vec<Vec<C64>> = seeds.iter().map(|v| proj.matrix.mat_vec(v)).collect();
        let ratio = independence_ratio(&projected)?;
        if ratio < tol.frame_restart {
            seeds = dominant_seeds(&proj.matrix, rank)?;
            projected = seeds.iter().map(|v| proj.matrix.mat_vec(v)).collect();
            restarts.push(FrameRestart { index: k, t: grid.t(k), ratio });
        }
        frames.push(gram_schmidt_with(&projected, tol)?);
    }
    Ok(FrameBundle { grid: grid.clone(), rank, frames, restarts })
}

/// `F*AF` for an orthonormal frame spanning an invariant subspace of `a`.
pub fn compress(a: &ComplexMatrix, frame: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if frame.rows() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: frame.rows() });
    }
    let af = a.matmul(frame);
    let c = frame.adjoint_mul(&af);
    let leak = &af - &frame.matmul(&c);
    let defect = leak.frobenius_norm();
    if defect > tol.invariance * a.frobenius_norm() {
        return Err(Error::NotInvariant { defect });
    }
    Ok(c)
}

/// The N×N matrix of `A(t)` in the given local frame.
pub fn compressed_matrix(family: &MatrixFamily, t: f64, frame: &ComplexMatrix) -> Result<ComplexMatrix> {
    compress(&family.at(t), frame, &Tolerances::default())
}
