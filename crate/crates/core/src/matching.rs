//! The non-separating metric on unordered eigenvalue tuples,
//!
//! d(λ, μ) = min over permutations σ of max_i |λ_i − μ_σ(i)|,
//!
//! computed exactly as a bottleneck assignment: the optimum is one of the N²
//! pairwise distances, so we search that sorted set for the smallest
//! threshold whose ≤-threshold bipartite graph has a perfect matching.

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{normal_eigen_with, normality_defect, operator_norm, ComplexMatrix, C64};

/// Largest tuple accepted by the public metric functions.
pub const MAX_TUPLE_LEN: usize = 64;

/// An unordered tuple of eigenvalues (a multiset; order carries no meaning).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenTuple(Vec<C64>);

impl EigenTuple {
    pub fn new(values: Vec<C64>) -> Result<Self> {
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[C64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        matching_distance(&self.0, &other.0)
    }
}

fn check_lengths(a: &[C64], b: &[C64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.len() > MAX_TUPLE_LEN {
        return Err(Error::TupleTooLong(a.len()));
    }
    Ok(())
}

/// d(λ, μ), exact.
pub fn matching_distance(a: &[C64], b: &[C64]) -> Result<f64> {
    check_lengths(a, b)?;
    Ok(bottleneck_assignment(a, b).0)
}

/// A permutation attaining d(λ, μ): `sigma[i]` is the index in `b` paired
/// with `a[i]`. Among optimal permutations the lexicographically smallest is
/// returned.
pub fn optimal_permutation(a: &[C64], b: &[C64]) -> Result<Vec<usize>> {
    check_lengths(a, b)?;
    Ok(bottleneck_assignment(a, b).1)
}

/// Bottleneck value and lexicographically smallest optimal permutation, any size.
pub(crate) fn bottleneck_assignment(a: &[C64], b: &[C64]) -> (f64, Vec<usize>) {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    if n == 0 {
        return (0.0, Vec::new());
    }
    let dist: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();

    let row_min = dist.iter().map(|r| r.iter().copied().fold(f64::INFINITY, f64::min));
    let col_min = (0..n).map(|j| dist.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min));
    let lower = row_min.chain(col_min).fold(0.0, f64::max);

    let (threshold, matching) = match perfect_matching(&dist, lower) {
        Some(m) => (lower, m),
        None => {
            let mut candidates: Vec<f64> = dist.iter().flatten().copied().filter(|&d| d > lower).collect();
            candidates.sort_by(f64::total_cmp);
            candidates.dedup();
            // The largest candidate always admits a perfect matching (complete graph).
            let (mut lo, mut hi) = (0, candidates.len() - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if perfect_matching(&dist, candidates[mid]).is_some() {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let th = candidates[lo];
            (th, perfect_matching(&dist, th).expect("feasible threshold"))
        }
    };
    (threshold, lexicographic_min(&dist, threshold, matching))
}

/// Kuhn's augmenting paths on the ≤-threshold graph; `row_col[i]` on success.
fn perfect_matching(dist: &[Vec<f64>], th: f64) -> Option<Vec<usize>> {
    let n = dist.len();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    let mut row_col: Vec<Option<usize>> = vec![None; n];
    // Greedy start.
    for i in 0..n {
        if let Some(j) = (0..n).find(|&j| col_owner[j].is_none() && dist[i][j] <= th) {
            col_owner[j] = Some(i);
            row_col[i] = Some(j);
        }
    }
    for i in 0..n {
        if row_col[i].is_some() {
            continue;
        }
        let mut visited = vec![false; n];
        if !kuhn(i, dist, th, &mut visited, &mut col_owner, &mut row_col) {
            return None;
        }
    }
    Some(row_col.into_iter().map(|c| c.expect("perfect")).collect())
}

fn kuhn(
    r: usize,
    dist: &[Vec<f64>],
    th: f64,
    visited: &mut [bool],
    col_owner: &mut [Option<usize>],
    row_col: &mut [Option<usize>],
) -> bool {
    for c in 0..dist.len() {
        if visited[c] || dist[r][c] > th {
            continue;
        }
        visited[c] = true;
        let free = match col_owner[c] {
            None => true,
            Some(r2) => kuhn(r2, dist, th, visited, col_owner, row_col),
        };
        if free {
            col_owner[c] = Some(r);
            row_col[r] = Some(c);
            return true;
        }
    }
    false
}

/// Turns a perfect matching under `th` into the lexicographically smallest one.
fn lexicographic_min(dist: &[Vec<f64>], th: f64, mut row_col: Vec<usize>) -> Vec<usize> {
    let n = dist.len();
    let mut col_owner = vec![0; n];
    for (r, &c) in row_col.iter().enumerate() {
        col_owner[c] = r;
    }
    for i in 0..n {
        for j in 0..n {
            if dist[i][j] > th || col_owner[j] < i {
                continue;
            }
            if row_col[i] == j {
                break;
            }
            if reassign(i, j, dist, th, &mut row_col, &mut col_owner) {
                break;
            }
        }
    }
    row_col
}

/// Tries to give column `j` to row `i`, re-matching the displaced row among rows > i.
fn reassign(i: usize, j: usize, dist: &[Vec<f64>], th: f64, row_col: &mut [usize], col_owner: &mut [usize]) -> bool {
    let n = dist.len();
    let old = row_col[i];
    let displaced = col_owner[j];
    let mut owner: Vec<Option<usize>> = col_owner.iter().map(|&r| Some(r)).collect();
    let mut rc: Vec<Option<usize>> = row_col.iter().map(|&c| Some(c)).collect();
    owner[j] = Some(i);
    rc[i] = Some(j);
    owner[old] = None;
    rc[displaced] = None;
    let mut visited = vec![false; n];
    visited[j] = true;
    if augment_unlocked(displaced, i, dist, th, &mut visited, &mut owner, &mut rc) {
        for (r, c) in rc.iter().enumerate() {
            row_col[r] = c.expect("perfect");
        }
        for (c, r) in owner.iter().enumerate() {
            col_owner[c] = r.expect("perfect");
        }
        true
    } else {
        false
    }
}

fn augment_unlocked(
    r: usize,
    locked_upto: usize,
    dist: &[Vec<f64>],
    th: f64,
    visited: &mut [bool],
    owner: &mut [Option<usize>],
    rc: &mut [Option<usize>],
) -> bool {
    for c in 0..dist.len() {
        if visited[c] || dist[r][c] > th {
            continue;
        }
        visited[c] = true;
        let ok = match owner[c] {
            None => true,
            Some(r2) if r2 <= locked_upto => false,
            Some(r2) => augment_unlocked(r2, locked_upto, dist, th, visited, owner, rc),
        };
        if ok {
            owner[c] = Some(r);
            rc[r] = Some(c);
            return true;
        }
    }
    false
}

/// Outcome of the normal-matrix perturbation bound check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalBound {
    /// Matching distance of the spectra.
    pub d: f64,
    /// ‖A − B‖ (operator norm).
    pub norm: f64,
    /// d / norm, or 0 when A = B.
    pub ratio: f64,
}

/// Universal constant bounding d(spec A, spec B) / ‖A − B‖ for normal A, B.
pub const NORMAL_BOUND_CONSTANT: f64 = 3.0;

pub fn check_normal_bound(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<NormalBound> {
    check_normal_bound_with(a, b, &Tolerances::default())
}

pub fn check_normal_bound_with(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<NormalBound> {
    if a.rows() != b.rows() || !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.rows() });
    }
    for m in [a, b] {
        let na = m.frobenius_norm();
        let defect = normality_defect(m);
        if defect > tol.normal_check * na * na {
            return Err(Error::NotNormal { defect, allowed: tol.normal_check * na * na });
        }
    }
    let sa = normal_eigen_with(a, tol)?;
    let sb = normal_eigen_with(b, tol)?;
    let d = bottleneck_assignment(&sa.eigenvalues, &sb.eigenvalues).0;
    let norm = operator_norm(&(a - b))?;
    let ratio = if norm == 0.0 { 0.0 } else { d / norm };
    if ratio > NORMAL_BOUND_CONSTANT {
        return Err(Error::BoundViolated { ratio });
    }
    Ok(NormalBound { d, norm, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(xs: &[f64]) -> Vec<C64> {
        xs.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn equal_multisets_have_zero_distance() {
        let a = r(&[3.0, -1.0, 2.0]);
        let b = r(&[2.0, 3.0, -1.0]);
        assert_eq!(matching_distance(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn paper_pair() {
        let s2 = 2f64.sqrt();
        let a = r(&[1.0 / 16.0, -1.0 / 16.0]);
        let b = r(&[s2 / 16.0, -s2 / 16.0]);
        let d = matching_distance(&a, &b).unwrap();
        assert!((d - (s2 - 1.0) / 16.0).abs() < 1e-17);
    }

    #[test]
    fn permutation_examples() {
        let a = r(&[1.0, 2.0, 3.0]);
        assert_eq!(optimal_permutation(&a, &a).unwrap(), vec![0, 1, 2]);
        let rev = r(&[3.0, 2.0, 1.0]);
        assert_eq!(optimal_permutation(&a, &rev).unwrap(), vec![2, 1, 0]);
        let flat = r(&[5.0; 4]);
        assert_eq!(optimal_permutation(&flat, &flat).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn lexicographic_among_optima() {
        let a = r(&[0.0, 0.0, 10.0]);
        let b = r(&[10.0, 0.25, -0.25]);
        // [1, 2, 0] and [2, 1, 0] both attain 0.25.
        assert_eq!(matching_distance(&a, &b).unwrap(), 0.25);
        assert_eq!(optimal_permutation(&a, &b).unwrap(), vec![1, 2, 0]);
        let a = r(&[0.0, 10.0]);
        let b = r(&[0.5, -0.5]);
        assert_eq!(optimal_permutation(&a, &b).unwrap(), vec![1, 0]);
        assert_eq!(matching_distance(&a, &b).unwrap(), 9.5);
    }

    #[test]
    fn length_errors() {
        assert_eq!(
            matching_distance(&r(&[1.0]), &r(&[1.0, 2.0])),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
        let big = vec![C64::new(0.0, 0.0); MAX_TUPLE_LEN + 1];
        assert!(matches!(matching_distance(&big, &big), Err(Error::TupleTooLong(_))));
        assert!(EigenTuple::new(vec![C64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn normal_bound_paper_pair() {
        let s = 1.0 / 16.0;
        let a = ComplexMatrix::from_real_diagonal(&[s, -s]);
        let b = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap();
        let nb = check_normal_bound(&a, &b).unwrap();
        let s2 = 2f64.sqrt();
        assert!((nb.d - (s2 - 1.0) / 16.0).abs() < 1e-15);
        assert!((nb.norm - 1.0 / 16.0).abs() < 1e-15);
        assert!((nb.ratio - (s2 - 1.0)).abs() < 1e-12);
        let same = check_normal_bound(&a, &a).unwrap();
        assert_eq!((same.d, same.ratio), (0.0, 0.0));
    }

    #[test]
    fn normal_bound_rejects_non_normal() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[2.0, 0.0]]).unwrap();
        assert!(matches!(check_normal_bound(&a, &a), Err(Error::NotNormal { .. })));
    }
}
