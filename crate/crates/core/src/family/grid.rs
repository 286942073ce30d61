use crate::error::{Error, Result};

/// Strictly increasing parameter points `anchor + offsets[k]`.
///
/// Offsets carry the resolution: a grid around `t_n` with offsets of order
/// 1e-17 is representable even though `t_n + 1e-17 == t_n` in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    anchor: f64,
    offsets: Vec<f64>,
}

impl Grid {
    /// Local grid around `anchor`.
    pub fn local(anchor: f64, offsets: Vec<f64>) -> Result<Self> {
        if offsets.len() < 2 {
            return Err(Error::InvalidGrid("a grid needs at least two points".into()));
        }
        if !anchor.is_finite() || offsets.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid("grid points must be finite".into()));
        }
        if let Some(k) = offsets.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!("grid is not strictly increasing at index {}", k + 1)));
        }
        Ok(Self { anchor, offsets })
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        Self::local(0.0, points)
    }

    /// `points` equally spaced points from `lo` to `hi` inclusive.
    pub fn uniform(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if points < 2 || lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidGrid(format!("need lo < hi and at least two points, got {lo}:{hi}:{points}")));
        }
        let step = (hi - lo) / (points - 1) as f64;
        let mut pts: Vec<f64> = (0..points).map(|k| lo + step * k as f64).collect();
        pts[points - 1] = hi;
        Self::from_points(pts)
    }

    /// Uniform grid of offsets in `[lo, hi]` around `anchor`.
    pub fn uniform_local(anchor: f64, lo: f64, hi: f64, points: usize) -> Result<Self> {
        let g = Self::uniform(lo, hi, points)?;
        Self::local(anchor, g.offsets)
    }

    /// Offsets `width·sinh(u)` for `u` uniform, covering `[lo, hi]` around `anchor`.
    /// Points cluster within about `width` of the anchor.
    pub fn stretched(anchor: f64, lo: f64, hi: f64, points: usize, width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidGrid(format!("stretch width must be positive, got {width}")));
        }
        let u = Self::uniform((lo / width).asinh(), (hi / width).asinh(), points)?;
        let mut offsets: Vec<f64> = u.offsets.iter().map(|&x| width * x.sinh()).collect();
        offsets[0] = lo;
        offsets[points - 1] = hi;
        Self::local(anchor, offsets)
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Absolute parameter value of point `k`.
    pub fn t(&self, k: usize) -> f64 {
        self.anchor + self.offsets[k]
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.t(k)).collect()
    }

    /// Grid with every interval halved.
    pub fn refined(&self) -> Self {
        let mut out = Vec::with_capacity(2 * self.len() - 1);
        for w in self.offsets.windows(2) {
            out.push(w[0]);
            out.push(0.5 * (w[0] + w[1]));
        }
        out.push(*self.offsets.last().expect("non-empty"));
        Self { anchor: self.anchor, offsets: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stretched_clusters_at_anchor() {
        let g = Grid::stretched(2.0, -1.0, 1.0, 101, 1e-6).unwrap();
        assert_eq!(g.offsets()[0], -1.0);
        assert_eq!(g.offsets()[100], 1.0);
        assert_eq!(g.offsets()[50], 0.0);
        assert!(g.offsets()[51] < 1e-5);
        assert!(Grid::stretched(0.0, -1.0, 1.0, 11, 0.0).is_err());
    }

    #[test]
    fn uniform_endpoints_exact() {
        let g = Grid::uniform(-1.0, 1.0, 11).unwrap();
        assert_eq!(g.t(0), -1.0);
        assert_eq!(g.t(10), 1.0);
        assert_eq!(g.t(5), 0.0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::uniform(1.0, 1.0, 3).is_err());
        assert!(Grid::uniform(0.0, 1.0, 1).is_err());
        assert!(Grid::from_points(vec![0.0, 0.5, 0.5]).is_err());
        assert!(Grid::from_points(vec![0.0, f64::NAN]).is_err());
    }

    #[test]
    fn refinement_halves_intervals() {
        let g = Grid::from_points(vec![0.0, 1.0, 3.0]).unwrap().refined();
        assert_eq!(g.offsets(), &[0.0, 0.5, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn local_offsets_below_ulp() {
        let anchor = 2.75;
        let s = 2f64.powi(-56);
        let g = Grid::local(anchor, vec![0.0, s]).unwrap();
        assert_eq!(g.t(1), anchor);
        assert_eq!(g.offsets()[1], s);
    }
}
