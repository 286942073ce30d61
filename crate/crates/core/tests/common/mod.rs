//! Independent reference computations for the integration tests.
//!
//! Nothing here calls the crate's solvers; only its data types.

#![allow(dead_code)]

use eigentrack::{ComplexMatrix, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// min over σ of max_i |a_i − b_σ(i)| by enumeration.
pub fn brute_force_distance(a: &[C64], b: &[C64]) -> f64 {
    permutations(a.len())
        .iter()
        .map(|p| p.iter().enumerate().map(|(i, &j)| (a[i] - b[j]).norm()).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

/// Number of eigenvalues of a Hermitian matrix below `x`, from the inertia of
/// A − xI (Sylvester's law) by symmetric Gaussian elimination with a
/// Bunch–Kaufman-free diagonal perturbation.
pub fn count_below(a: &ComplexMatrix, x: f64) -> usize {
    let n = a.rows();
    let mut m: Vec<Vec<C64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).collect()).collect();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= x;
    }
    let tiny = 1e-300;
    let mut negatives = 0;
    for k in 0..n {
        let mut pivot = m[k][k].re;
        if pivot == 0.0 {
            pivot = tiny;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = m[i][k] / pivot;
            for j in k + 1..n {
                let sub = f * m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    negatives
}

/// det(A) by Gaussian elimination with partial pivoting.
pub fn det(a: &ComplexMatrix) -> C64 {
    let n = a.rows();
    let mut m: Vec<Vec<C64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).collect()).collect();
    let mut d = c(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm())).expect("non-empty");
        if m[p][k].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        d *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let sub = f * m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    d
}

/// Ascending coefficients of Π (x − r_i).
pub fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut p = vec![c(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![c(0.0, 0.0); p.len() + 1];
        for (k, &a) in p.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        p = next;
    }
    p
}

/// The coefficients a_1..a_n of xⁿ − a₁xⁿ⁻¹ + a₂xⁿ⁻² − … for the given roots,
/// i.e. the elementary symmetric polynomials.
pub fn elementary_symmetric(roots: &[C64]) -> Vec<C64> {
    let p = poly_from_roots(roots);
    let n = roots.len();
    (1..=n).map(|k| p[n - k] * if k % 2 == 0 { 1.0 } else { -1.0 }).collect()
}

/// Q diag(values) Q* with Q a product of Givens-like rotations seeded by `seed`.
pub fn unitary(n: usize, seed: u64) -> ComplexMatrix {
    use rand::Rng;
    let mut r = rng(seed);
    let mut q = ComplexMatrix::identity(n);
    for _ in 0..3 * n * n {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n);
        if i == j {
            j = (j + 1) % n;
        }
        let theta: f64 = r.gen_range(0.0..std::f64::consts::PI);
        let phi: f64 = r.gen_range(0.0..2.0 * std::f64::consts::PI);
        let (cs, sn) = (theta.cos(), theta.sin());
        let e = C64::from_polar(1.0, phi);
        for row in 0..n {
            let (a, b) = (q[(row, i)], q[(row, j)]);
            q[(row, i)] = a * cs - b * sn * e.conj();
            q[(row, j)] = a * sn * e + b * cs;
        }
    }
    q
}

pub fn with_spectrum(q: &ComplexMatrix, values: &[C64]) -> ComplexMatrix {
    q.matmul(&ComplexMatrix::from_diagonal(values)).matmul(&q.adjoint())
}

/// Orthogonal projector onto the columns `idx` of the unitary `q`.
pub fn column_projector(q: &ComplexMatrix, idx: &[usize]) -> ComplexMatrix {
    let s = q.select_columns(idx);
    s.matmul(&s.adjoint())
}

/// Dirichlet Laplacian on `points` interior nodes of an interval of length `len`.
pub fn dirichlet_eigenvalue(k: usize, points: usize, len: f64) -> f64 {
    let h = len / (points + 1) as f64;
    let s = (k as f64 * std::f64::consts::PI / (2.0 * (points + 1) as f64)).sin();
    4.0 / (h * h) * s * s
}
