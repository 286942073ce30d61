//! Glued affine segments, `A(t_n + s) = A_n + s·B_n` for |s| ≤ half-width,
//! joined by C² quintic blends, and the 2×2 counterexample built on it.

use std::sync::Arc;

use super::{ClaimedClass, FamilyEvaluator, MatrixFamily, Structure};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Largest segment index of the counterexample family (2^{-n²} underflows beyond it).
pub const PAPER_MAX_N: usize = 30;

/// One affine piece of a glued family.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSpec {
    /// Segment number n ≥ 1; the half-width may not exceed 1/n².
    pub index: usize,
    pub anchor: f64,
    pub half_width: f64,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
}

impl SegmentSpec {
    fn left(&self) -> f64 {
        self.anchor - self.half_width
    }

    fn right(&self) -> f64 {
        self.anchor + self.half_width
    }

    /// A_n + s·B_n.
    pub fn value(&self, s: f64) -> ComplexMatrix {
        &self.a + &self.b.scale_real(s)
    }
}

struct Glued {
    segments: Vec<SegmentSpec>,
}

impl Glued {
    fn blend(&self, k: usize, t: f64) -> ComplexMatrix {
        let (l, r) = (&self.segments[k], &self.segments[k + 1]);
        let (t0, t1) = (l.right(), r.left());
        let h = t1 - t0;
        let u = (t - t0) / h;
        let (u2, u3) = (u * u, u * u * u);
        let (u4, u5) = (u3 * u, u3 * u2);
        // Quintic Hermite basis: value and first derivative at both ends; the
        // second derivatives of affine pieces vanish, so those terms drop out.
        let h0 = 1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5;
        let h1 = u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5;
        let h3 = 10.0 * u3 - 15.0 * u4 + 6.0 * u5;
        let h4 = -4.0 * u3 + 7.0 * u4 - 3.0 * u5;
        let p0 = l.value(l.half_width);
        let p1 = r.value(-r.half_width);
        &(&p0.scale_real(h0) + &l.b.scale_real(h1 * h)) + &(&p1.scale_real(h3) + &r.b.scale_real(h4 * h))
    }
}

impl FamilyEvaluator for Glued {
    fn eval(&self, t: f64) -> ComplexMatrix {
        let segs = &self.segments;
        let k = segs.partition_point(|s| s.right() < t);
        if k < segs.len() && t >= segs[k].left() {
            return segs[k].value(t - segs[k].anchor);
        }
        if k == 0 {
            let first = &segs[0];
            return first.value(-first.half_width);
        }
        if k == segs.len() {
            let last = &segs[k - 1];
            return last.value(last.half_width);
        }
        self.blend(k - 1, t)
    }

    fn eval_offset(&self, anchor: f64, offset: f64) -> ComplexMatrix {
        let k = self.segments.partition_point(|s| s.anchor < anchor);
        if let Some(seg) = self.segments.get(k) {
            if seg.anchor == anchor && offset.abs() <= seg.half_width {
                return seg.value(offset);
            }
        }
        self.eval(anchor + offset)
    }
}

/// Glues affine segments into one family.
///
/// Segments must have strictly increasing anchors and stay disjoint after
/// each is widened by `blend_margin` on both sides.
pub fn glued_family(segments: Vec<SegmentSpec>, blend_margin: f64) -> Result<MatrixFamily> {
    if segments.is_empty() {
        return Err(Error::InvalidSegment("at least one segment is required".into()));
    }
    if !(blend_margin >= 0.0) {
        return Err(Error::InvalidSegment("blend margin must be non-negative".into()));
    }
    let n = segments[0].a.rows();
    for s in &segments {
        if s.index == 0 {
            return Err(Error::InvalidSegment("segment index starts at 1".into()));
        }
        if !(s.half_width > 0.0) || s.half_width > 1.0 / (s.index * s.index) as f64 {
            return Err(Error::InvalidSegment(format!(
                "segment {} half-width {} outside (0, 1/n²]",
                s.index, s.half_width
            )));
        }
        for m in [&s.a, &s.b] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
            }
        }
    }
    for w in segments.windows(2) {
        if w[0].anchor >= w[1].anchor || w[0].right() + blend_margin >= w[1].left() - blend_margin {
            return Err(Error::OverlappingSegments { first: w[0].index, second: w[1].index });
        }
    }
    let hermitian = segments.iter().all(|s| s.a.hermitian_defect() == 0.0 && s.b.hermitian_defect() == 0.0);
    let structure = if hermitian { Structure::Hermitian } else { Structure::General };
    let domain = (segments[0].left(), segments[segments.len() - 1].right());
    let family = MatrixFamily::new(n, domain, structure, ClaimedClass::Smooth, Arc::new(Glued { segments }))?;
    Ok(family.with_note("between segments the family is a C² quintic blend"))
}

/// Anchor t_n = Σ_{k<n} 2/k²: increasing, convergent, and leaving a gap between
/// consecutive segments of half-width 1/n².
pub fn paper_anchor(n: usize) -> f64 {
    (1..n).map(|k| 2.0 / (k * k) as f64).sum()
}

/// s_n = 2^{n − n²}.
pub fn paper_step(n: usize) -> f64 {
    let n = n as i32;
    2f64.powi(n - n * n)
}

/// Positive eigenvalue branch of A_n + s·B_n: 2^{−n²}·√(1 + (s/s_n)²).
pub fn paper_eigenvalue(n: usize, s: f64) -> f64 {
    let ni = n as i32;
    2f64.powi(-ni * ni) * (s / paper_step(n)).hypot(1.0)
}

/// Derivative of the positive branch: 2^{n²−2n}·s / √(1 + (s/s_n)²).
pub fn paper_eigenvalue_derivative(n: usize, s: f64) -> f64 {
    let ni = n as i32;
    2f64.powi(ni * ni - 2 * ni) * s / (s / paper_step(n)).hypot(1.0)
}

/// Segment n of the counterexample: A_n = 2^{−n²}·diag(1, −1), B_n = 2^{−n²}/s_n · [[0, 1], [1, 0]].
pub fn paper_segment(n: usize) -> SegmentSpec {
    let ni = n as i32;
    let scale = 2f64.powi(-ni * ni);
    let off = scale / paper_step(n);
    SegmentSpec {
        index: n,
        anchor: paper_anchor(n),
        half_width: 1.0 / (n * n) as f64,
        a: ComplexMatrix::from_real_diagonal(&[scale, -scale]),
        b: ComplexMatrix::from_real_rows(&[&[0.0, off], &[off, 0.0]]).expect("2x2"),
    }
}

/// Segments 1..=n_max of the counterexample glued into one real-symmetric family.
pub fn paper_example_family(n_max: usize) -> Result<MatrixFamily> {
    if n_max == 0 || n_max > PAPER_MAX_N {
        return Err(Error::Config(format!("n_max must lie in 1..={PAPER_MAX_N}, got {n_max}")));
    }
    let segments = (1..=n_max).map(paper_segment).collect();
    Ok(glued_family(segments, 0.0)?.with_claimed_class(ClaimedClass::DenjoyCarleman))
}
