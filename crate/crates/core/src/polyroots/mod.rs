//! Curves of monic polynomials
//! `P(t)(x) = xⁿ − a₁(t)xⁿ⁻¹ + a₂(t)xⁿ⁻² − … + (−1)ⁿaₙ(t)`:
//! hyperbolicity, root tracking, and power substitution `t = t₀ ± s^N`.

mod order;
mod roots;

use std::fmt;
use std::sync::Arc;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::{Grid, MatrixFamily};
use crate::linalg::{ComplexMatrix, C64};
use crate::tracking::{continue_curves, CurveBundle, Sample};

pub use order::{
    eigen_substitution_order, estimate_order_from_roots, estimate_substitution_order, estimate_substitution_order_with,
    BranchOrder, ClusterExponent, SubstitutionOrder,
};

/// A coefficient function a_k(t).
#[derive(Clone)]
pub enum Coefficient {
    /// Ascending coefficients in t.
    Polynomial(Vec<C64>),
    Function(Arc<dyn Fn(f64) -> C64 + Send + Sync>),
}

impl Coefficient {
    pub fn eval(&self, t: f64) -> C64 {
        match self {
            Coefficient::Polynomial(c) => c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * t + a),
            Coefficient::Function(f) => f(t),
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            Coefficient::Function(_) => f.write_str("Function(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PolynomialFamily {
    coefficients: Vec<Coefficient>,
    domain: (f64, f64),
}

impl PolynomialFamily {
    pub fn new(coefficients: Vec<Coefficient>, domain: (f64, f64)) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Config("polynomial degree must be positive".into()));
        }
        if domain.0.is_nan() || domain.1.is_nan() || domain.0 >= domain.1 {
            return Err(Error::Config(format!("invalid domain [{}, {}]", domain.0, domain.1)));
        }
        for c in &coefficients {
            if let Coefficient::Polynomial(p) = c {
                if p.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::NonFinite);
                }
            }
        }
        Ok(Self { coefficients, domain })
    }

    /// `coefficients[k]` holds a_{k+1}(t) in ascending powers of t.
    pub fn from_polynomials(coefficients: Vec<Vec<C64>>, domain: (f64, f64)) -> Result<Self> {
        Self::new(coefficients.into_iter().map(Coefficient::Polynomial).collect(), domain)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn coefficients(&self) -> &[Coefficient] {
        &self.coefficients
    }

    /// a_1(t), …, a_n(t).
    pub fn coefficients_at(&self, t: f64) -> Vec<C64> {
        self.coefficients.iter().map(|c| c.eval(t)).collect()
    }

    /// Ascending coefficients c_0, …, c_n (c_n = 1) of P(t)(x).
    pub fn monic_at(&self, t: f64) -> Vec<C64> {
        let a = self.coefficients_at(t);
        let n = a.len();
        let mut c = vec![C64::new(0.0, 0.0); n + 1];
        c[n] = C64::new(1.0, 0.0);
        for (k, &ak) in a.iter().enumerate() {
            let k = k + 1;
            c[n - k] = if k % 2 == 0 { ak } else { -ak };
        }
        c
    }

    /// P(t)(x).
    pub fn eval(&self, t: f64, x: C64) -> C64 {
        roots::eval(&self.monic_at(t), x)
    }

    /// Roots of P(t), ascending by (re, im).
    pub fn roots_at(&self, t: f64) -> Vec<C64> {
        let c = self.monic_at(t);
        roots::hyperbolic_roots(&c).unwrap_or_else(|| roots::complex_roots(&c))
    }

    /// max_k |c_{n−k}|^{1/k}, comparable to the largest root modulus.
    pub fn root_scale_at(&self, t: f64) -> f64 {
        roots::root_scale(&self.monic_at(t))
    }
}

/// True iff all roots of P(t) are real (Sturm sequences on the Cauchy disk).
/// Polynomials with non-real coefficients are never hyperbolic.
pub fn hyperbolicity_check(p: &PolynomialFamily, t: f64) -> bool {
    roots::real_root_count(&p.monic_at(t)) == Some(p.degree())
}

/// How roots are computed along a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMode {
    /// Real (Sturm) roots where the polynomial is hyperbolic, complex roots elsewhere.
    Auto,
    /// Require hyperbolicity at every point.
    Real,
}

/// Labeled root curves on `grid`.
pub fn track_roots(p: &PolynomialFamily, grid: &Grid) -> Result<CurveBundle> {
    track_roots_with(p, grid, RootMode::Auto, true, &Tolerances::default())
}

pub fn track_roots_with(
    p: &PolynomialFamily,
    grid: &Grid,
    mode: RootMode,
    refine: bool,
    tol: &Tolerances,
) -> Result<CurveBundle> {
    let anchor = grid.anchor();
    let (curves, scales, events) = continue_curves(grid, refine, tol, |off| {
        let t = anchor + off;
        let c = p.monic_at(t);
        if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let values = match (roots::hyperbolic_roots(&c), mode) {
            (Some(r), _) => r,
            (None, RootMode::Real) => return Err(Error::NotHyperbolic { t }),
            (None, RootMode::Auto) => roots::complex_roots(&c),
        };
        Ok(Sample { values, scale: roots::root_scale(&c) })
    })?;
    Ok(CurveBundle { grid: grid.clone(), curves, scales, frames: None, gauge_angles: Vec::new(), events })
}

/// The reparameterization `t = t0 + (−1)^ε s^N`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PowerSubstitution {
    pub t0: f64,
    pub n: usize,
    pub epsilon: u8,
}

impl PowerSubstitution {
    pub fn new(t0: f64, n: usize, epsilon: u8) -> Result<Self> {
        if n == 0 || epsilon > 1 || !t0.is_finite() {
            return Err(Error::Config(format!("invalid substitution t0={t0} N={n} ε={epsilon}")));
        }
        Ok(Self { t0, n, epsilon })
    }

    pub fn t_of(&self, s: f64) -> f64 {
        let sign = if self.epsilon == 0 { 1.0 } else { -1.0 };
        self.t0 + sign * s.powi(self.n as i32)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients of c(t0 + (−1)^ε s^N) in ascending powers of s.
fn compose(c: &[C64], sub: &PowerSubstitution) -> Vec<C64> {
    let d = c.len();
    if d == 0 {
        return Vec::new();
    }
    // Taylor shift to t0.
    let shifted: Vec<C64> = (0..d)
        .map(|k| (k..d).map(|j| c[j] * (binomial(j, k) * sub.t0.powi((j - k) as i32))).sum())
        .collect();
    let sign: f64 = if sub.epsilon == 0 { 1.0 } else { -1.0 };
    let mut out = vec![C64::new(0.0, 0.0); (d - 1) * sub.n + 1];
    for (j, &q) in shifted.iter().enumerate() {
        out[j * sub.n] = q * sign.powi(j as i32);
    }
    out
}

/// The family `s ↦ P(t0 + (−1)^ε s^N)`, with coefficients recomposed as polynomials in s.
pub fn substitute_power(p: &PolynomialFamily, sub: PowerSubstitution) -> Result<PolynomialFamily> {
    let coeffs = p
        .coefficients
        .iter()
        .map(|c| match c {
            Coefficient::Polynomial(poly) => Ok(Coefficient::Polynomial(compose(poly, &sub))),
            Coefficient::Function(_) => Err(Error::NotPolynomial),
        })
        .collect::<Result<Vec<_>>>()?;
    let (lo, hi) = p.domain;
    let reach = if sub.epsilon == 0 { hi - sub.t0 } else { sub.t0 - lo };
    let r = if reach > 0.0 && reach.is_finite() { reach.powf(1.0 / sub.n as f64) } else { 1.0 };
    PolynomialFamily::new(coeffs, (-r, r))
}

/// Characteristic polynomial det(xI − A) by the Faddeev–LeVerrier recurrence,
/// returned as a_1, …, a_n (a_1 = trace A).
pub fn charpoly(a: &ComplexMatrix) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let n = a.rows();
    // c[i] is the coefficient of x^i.
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    c[n] = C64::new(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.matmul(&m).shifted(-c[n - k + 1]);
        c[n - k] = -a.matmul(&m).trace() / k as f64;
    }
    Ok((1..=n).map(|k| if k % 2 == 0 { c[n - k] } else { -c[n - k] }).collect())
}

/// The characteristic-polynomial curve of a matrix family.
pub fn charpoly_family(family: &MatrixFamily) -> Result<PolynomialFamily> {
    let n = family.size();
    let coeffs = (0..n)
        .map(|k| {
            let f = family.clone();
            Coefficient::Function(Arc::new(move |t| charpoly(&f.at(t)).map(|a| a[k]).unwrap_or(C64::new(f64::NAN, 0.0))))
        })
        .collect();
    PolynomialFamily::new(coeffs, family.domain())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    /// x² − t: a₁ = 0, a₂ = −t.
    fn sqrt_family() -> PolynomialFamily {
        PolynomialFamily::from_polynomials(vec![vec![], vec![r(0.0), r(-1.0)]], (-1.0, 1.0)).unwrap()
    }

    #[test]
    fn sign_convention() {
        let p = sqrt_family();
        assert_eq!(p.monic_at(0.25), vec![r(-0.25), r(0.0), r(1.0)]);
        let roots = p.roots_at(0.25);
        assert!((roots[0].re + 0.5).abs() < 1e-15 && (roots[1].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hyperbolicity_examples() {
        let p = sqrt_family();
        assert!(hyperbolicity_check(&p, 1.0));
        assert!(!hyperbolicity_check(&p, -1.0));
        // x² + 1: a₁ = 0, a₂ = 1.
        let q = PolynomialFamily::from_polynomials(vec![vec![], vec![r(1.0)]], (0.0, 1.0)).unwrap();
        assert!(!hyperbolicity_check(&q, 0.5));
        let complex = PolynomialFamily::from_polynomials(vec![vec![C64::new(0.0, 1.0)]], (0.0, 1.0)).unwrap();
        assert!(!hyperbolicity_check(&complex, 0.5));
    }

    #[test]
    fn real_mode_rejects_non_hyperbolic() {
        let grid = Grid::uniform(-1.0, 1.0, 5).unwrap();
        let err = track_roots_with(&sqrt_family(), &grid, RootMode::Real, true, &Tolerances::default()).unwrap_err();
        assert_eq!(err, Error::NotHyperbolic { t: -1.0 });
    }

    #[test]
    fn factorable_roots_tracked_through_zero() {
        // x² − t²
        let p = PolynomialFamily::from_polynomials(vec![vec![], vec![r(0.0), r(0.0), r(-1.0)]], (-1.0, 1.0)).unwrap();
        let grid = Grid::uniform(-1.0, 1.0, 21).unwrap();
        let b = track_roots(&p, &grid).unwrap();
        for k in 0..grid.len() {
            let t = grid.t(k);
            assert!((b.curves[0][k].re - t).abs() < 1e-14, "t={t}: {}", b.curves[0][k]);
            assert!((b.curves[1][k].re + t).abs() < 1e-14);
        }
    }

    #[test]
    fn substitution_examples() {
        let p = sqrt_family();
        let s2 = substitute_power(&p, PowerSubstitution::new(0.0, 2, 0).unwrap()).unwrap();
        assert_eq!(s2.monic_at(0.5), vec![r(-0.25), r(0.0), r(1.0)]);
        let minus = substitute_power(&p, PowerSubstitution::new(0.0, 2, 1).unwrap()).unwrap();
        let roots = minus.roots_at(0.5);
        assert!((roots[0] - C64::new(0.0, -0.5)).norm() < 1e-15 && (roots[1] - C64::new(0.0, 0.5)).norm() < 1e-15);
        // Shifted base point: a₂(t) = −t at t0 = 1 gives −1 − s².
        let shifted = substitute_power(&p, PowerSubstitution::new(1.0, 2, 0).unwrap()).unwrap();
        assert_eq!(shifted.coefficients_at(2.0)[1], r(-5.0));
        let f = PolynomialFamily::new(vec![Coefficient::Function(Arc::new(r))], (0.0, 1.0)).unwrap();
        assert_eq!(substitute_power(&f, PowerSubstitution::new(0.0, 2, 0).unwrap()).unwrap_err(), Error::NotPolynomial);
    }

    #[test]
    fn charpoly_examples() {
        let a = charpoly(&ComplexMatrix::from_real_diagonal(&[1.0, -1.0])).unwrap();
        assert_eq!(a, vec![r(0.0), r(-1.0)]);
        assert_eq!(charpoly(&ComplexMatrix::identity(2)).unwrap(), vec![r(2.0), r(1.0)]);
    }
}
