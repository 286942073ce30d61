//! JSON family-specification files. The schema is documented in `docs/family-spec.md`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    glued_family, paper_example_family, polynomial_entry_family, schrodinger_family, ClaimedClass, MatrixFamily,
    SegmentSpec, Structure,
};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::polyroots::PolynomialFamily;
use crate::riesz::Contour;

/// A complex number written either as a bare real or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Real(f64),
    Complex([f64; 2]),
}

impl Num {
    pub fn value(self) -> C64 {
        match self {
            Num::Real(re) => C64::new(re, 0.0),
            Num::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XFactor {
    One,
    X,
    X2,
    Sin,
    Cos,
}

/// One term `coef · t^t_power · f(x)` of a potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialTerm {
    pub coef: f64,
    #[serde(default)]
    pub t_power: u32,
    #[serde(default = "default_x")]
    pub x: XFactor,
}

fn default_x() -> XFactor {
    XFactor::One
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentFile {
    pub index: usize,
    pub anchor: f64,
    pub half_width: f64,
    pub a: Vec<Vec<Num>>,
    pub b: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    PaperExample {
        n_max: usize,
    },
    Schrodinger {
        grid_points: usize,
        interval: [f64; 2],
        #[serde(default)]
        potential: Vec<PotentialTerm>,
    },
    PolynomialEntries {
        /// `entries[i][j]` = ascending coefficients in t of entry (i, j).
        entries: Vec<Vec<Vec<Num>>>,
    },
    Glued {
        #[serde(default)]
        blend_margin: f64,
        segments: Vec<SegmentFile>,
    },
    /// Monic polynomial `xⁿ − a₁xⁿ⁻¹ + … + (−1)ⁿaₙ`; `coefficients[k]` holds a_{k+1} in ascending powers of t.
    Polynomial {
        coefficients: Vec<Vec<Num>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ContourSpec {
    Circle {
        center: Num,
        radius: f64,
        #[serde(default)]
        nodes: Option<usize>,
    },
    Polygon {
        vertices: Vec<Num>,
        #[serde(default)]
        nodes: Option<usize>,
    },
}

impl ContourSpec {
    pub fn to_contour(&self) -> Result<Contour> {
        let (contour, nodes) = match self {
            ContourSpec::Circle { center, radius, nodes } => (Contour::circle(center.value(), *radius)?, *nodes),
            ContourSpec::Polygon { vertices, nodes } => {
                (Contour::polygon(vertices.iter().map(|v| v.value()).collect())?, *nodes)
            }
        };
        match nodes {
            Some(n) => contour.with_nodes(n),
            None => Ok(contour),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub size: usize,
    pub domain: [f64; 2],
    #[serde(default)]
    pub structure: Option<Structure>,
    #[serde(default)]
    pub claimed_class: Option<ClaimedClass>,
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub contour: Option<ContourSpec>,
}

fn matrix(rows: &[Vec<Num>], n: usize, what: &str) -> Result<ComplexMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Config(format!("{what} must be {n}x{n}")));
    }
    let data = rows.iter().flat_map(|r| r.iter().map(|v| v.value())).collect();
    ComplexMatrix::new(n, n, data)
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("family spec: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    fn expect_structure(&self, inherent: Structure) -> Result<()> {
        match self.structure {
            Some(s) if s != inherent => {
                Err(Error::Config(format!("generator produces {inherent:?} matrices, spec declares {s:?}")))
            }
            _ => Ok(()),
        }
    }

    fn expect_size(&self, size: usize) -> Result<()> {
        if self.size != size {
            return Err(Error::Config(format!("generator produces size {size}, spec declares {}", self.size)));
        }
        Ok(())
    }

    /// Builds the matrix family described by the file.
    pub fn to_family(&self) -> Result<MatrixFamily> {
        let [lo, hi] = self.domain;
        let family = match &self.generator {
            GeneratorSpec::PaperExample { n_max } => {
                self.expect_size(2)?;
                self.expect_structure(Structure::Hermitian)?;
                paper_example_family(*n_max)?
            }
            GeneratorSpec::Schrodinger { grid_points, interval, potential } => {
                self.expect_size(*grid_points)?;
                self.expect_structure(Structure::Hermitian)?;
                let terms = potential.clone();
                let v = Arc::new(move |t: f64, x: f64| {
                    terms
                        .iter()
                        .map(|term| {
                            let fx = match term.x {
                                XFactor::One => 1.0,
                                XFactor::X => x,
                                XFactor::X2 => x * x,
                                XFactor::Sin => x.sin(),
                                XFactor::Cos => x.cos(),
                            };
                            term.coef * t.powi(term.t_power as i32) * fx
                        })
                        .sum()
                });
                schrodinger_family(v, *grid_points, (interval[0], interval[1]))?
            }
            GeneratorSpec::PolynomialEntries { entries } => {
                self.expect_size(entries.len())?;
                let entries: Vec<Vec<Vec<C64>>> = entries
                    .iter()
                    .map(|row| row.iter().map(|p| p.iter().map(|v| v.value()).collect()).collect())
                    .collect();
                let structure = self.structure.unwrap_or(Structure::General);
                polynomial_entry_family(&entries, structure, (lo, hi))?
            }
            GeneratorSpec::Glued { blend_margin, segments } => {
                let segs = segments
                    .iter()
                    .map(|s| {
                        Ok(SegmentSpec {
                            index: s.index,
                            anchor: s.anchor,
                            half_width: s.half_width,
                            a: matrix(&s.a, self.size, "segment matrix a")?,
                            b: matrix(&s.b, self.size, "segment matrix b")?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let family = glued_family(segs, *blend_margin)?;
                if let Some(s) = self.structure {
                    if s == Structure::Hermitian && family.structure() != Structure::Hermitian {
                        return Err(Error::Config("glued segments are not Hermitian".into()));
                    }
                }
                family
            }
            GeneratorSpec::Polynomial { .. } => {
                return Err(Error::Config("polynomial generator describes a root family, not a matrix family".into()))
            }
        };
        let family = family.with_domain(lo, hi)?;
        Ok(match self.claimed_class {
            Some(c) => family.with_claimed_class(c),
            None => family,
        })
    }

    /// Builds the polynomial family of a `polynomial` generator.
    pub fn to_polynomial(&self) -> Result<PolynomialFamily> {
        match &self.generator {
            GeneratorSpec::Polynomial { coefficients } => {
                self.expect_size(coefficients.len())?;
                let coeffs = coefficients.iter().map(|p| p.iter().map(|v| v.value()).collect()).collect();
                PolynomialFamily::from_polynomials(coeffs, (self.domain[0], self.domain[1]))
            }
            _ => Err(Error::Config("spec does not use the polynomial generator".into())),
        }
    }

    pub fn contour(&self) -> Result<Option<Contour>> {
        self.contour.as_ref().map(|c| c.to_contour()).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_example_spec() {
        let spec = FamilySpec::from_json(
            r#"{"size": 2, "domain": [-1, 3], "structure": "hermitian",
                "generator": {"kind": "paper_example", "n_max": 3}}"#,
        )
        .unwrap();
        let f = spec.to_family().unwrap();
        assert_eq!(f.domain(), (-1.0, 3.0));
        assert_eq!(f.at(2.0), ComplexMatrix::from_real_diagonal(&[1.0 / 16.0, -1.0 / 16.0]));
    }

    #[test]
    fn unknown_fields_rejected() {
        let err = FamilySpec::from_json(
            r#"{"size": 2, "domain": [0, 1], "colour": "red",
                "generator": {"kind": "paper_example", "n_max": 3}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
        assert!(FamilySpec::from_json(
            r#"{"size": 2, "domain": [0, 1], "generator": {"kind": "paper_example", "n_max": 3, "x": 1}}"#
        )
        .is_err());
        assert!(FamilySpec::from_json(r#"{"size": 2, "domain": [0, 1], "generator": {"kind": "magic"}}"#).is_err());
    }

    #[test]
    fn polynomial_entries_spec() {
        let spec = FamilySpec::from_json(
            r#"{"size": 2, "domain": [-1, 1], "structure": "normal",
                "generator": {"kind": "polynomial_entries",
                              "entries": [[[0, 1], []], [[], [0, [0, 1]]]]}}"#,
        )
        .unwrap();
        let f = spec.to_family().unwrap();
        assert_eq!(f.structure(), Structure::Normal);
        let m = f.at(0.5);
        assert_eq!(m[(0, 0)], C64::new(0.5, 0.0));
        assert_eq!(m[(1, 1)], C64::new(0.0, 0.5));
    }

    #[test]
    fn schrodinger_spec() {
        let spec = FamilySpec::from_json(
            r#"{"size": 4, "domain": [0, 1],
                "generator": {"kind": "schrodinger", "grid_points": 4, "interval": [0, 5],
                              "potential": [{"coef": 2.0, "t_power": 1, "x": "x"}]}}"#,
        )
        .unwrap();
        let f = spec.to_family().unwrap();
        let m = f.at(0.5);
        assert!((m[(0, 0)].re - (2.0 + 1.0)).abs() < 1e-15);
        assert_eq!(m[(0, 1)].re, -1.0);
        let bad = FamilySpec { size: 5, ..spec };
        assert!(bad.to_family().is_err());
    }

    #[test]
    fn glued_and_contour_spec() {
        let spec = FamilySpec::from_json(
            r#"{"size": 2, "domain": [-1, 1],
                "generator": {"kind": "glued", "segments": [
                    {"index": 1, "anchor": 0, "half_width": 1,
                     "a": [[1, 0], [0, -1]], "b": [[0, 1], [1, 0]]}]},
                "contour": {"circle": {"center": [1, 0], "radius": 0.5}}}"#,
        )
        .unwrap();
        let f = spec.to_family().unwrap();
        assert_eq!(f.at(0.5)[(0, 1)], C64::new(0.5, 0.0));
        assert!(spec.contour().unwrap().is_some());
    }

    #[test]
    fn polynomial_spec() {
        let spec = FamilySpec::from_json(
            r#"{"size": 2, "domain": [-1, 1], "generator": {"kind": "polynomial", "coefficients": [[], [0, -1]]}}"#,
        )
        .unwrap();
        assert!(spec.to_family().is_err());
        let p = spec.to_polynomial().unwrap();
        assert_eq!(p.degree(), 2);
    }
}
