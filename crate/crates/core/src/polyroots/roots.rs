//! Roots of a single monic polynomial given by ascending coefficients `c_0, …, c_n` (`c_n = 1`).

use crate::linalg::C64;

/// Remainders below this (relative to normalized chain members) end the Sturm chain.
const CHAIN_ZERO: f64 = 1e-12;

/// max_k |c_{n−k}|^{1/k}; the roots lie in the disk of radius twice this value.
pub(crate) fn root_scale(c: &[C64]) -> f64 {
    let n = c.len() - 1;
    (1..=n).map(|k| c[n - k].norm().powf(1.0 / k as f64)).fold(0.0, f64::max)
}

/// Coefficients of p(ρ·y)/ρⁿ.
fn scaled(c: &[C64], rho: f64) -> Vec<C64> {
    let n = c.len() - 1;
    (0..=n).map(|i| c[i] / rho.powi((n - i) as i32)).collect()
}

pub(crate) fn eval(c: &[C64], x: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

fn eval_with_derivative(c: &[C64], x: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

fn eval_real(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn trim(mut p: Vec<f64>) -> Vec<f64> {
    while p.len() > 1 && *p.last().unwrap() == 0.0 {
        p.pop();
    }
    p
}

fn normalize(p: Vec<f64>) -> Vec<f64> {
    let m = p.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if m > 0.0 {
        p.into_iter().map(|x| x / m).collect()
    } else {
        p
    }
}

/// Remainder of `a` divided by `b` (ascending coefficients, deg b ≥ 0, leading coefficient non-zero).
fn remainder(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let q = r[dr] / lead;
        for j in 0..=db {
            r[dr - db + j] -= q * b[j];
        }
        r.pop();
        if r.is_empty() {
            break;
        }
    }
    if r.is_empty() {
        r.push(0.0);
    }
    r
}

fn derivative(p: &[f64]) -> Vec<f64> {
    (1..p.len()).map(|i| p[i] * i as f64).collect()
}

/// Sturm chain of `p`; its last member is (up to a constant) gcd(p, p').
fn sturm_chain(p: &[f64]) -> Vec<Vec<f64>> {
    let mut chain = vec![normalize(p.to_vec())];
    if p.len() < 2 {
        return chain;
    }
    chain.push(normalize(derivative(p)));
    loop {
        let k = chain.len();
        if chain[k - 1].len() < 2 {
            break;
        }
        let r = trim(remainder(&chain[k - 2], &chain[k - 1]));
        let size = r.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if size <= CHAIN_ZERO {
            break;
        }
        chain.push(normalize(r.into_iter().map(|x| -x).collect()));
    }
    chain
}

fn variations(chain: &[Vec<f64>], x: f64) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for p in chain {
        let v = eval_real(p, x);
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = v;
        }
    }
    count
}

/// Distinct real roots of `p` in (−bound, bound], by Sturm bisection.
fn distinct_real_roots(chain: &[Vec<f64>], bound: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut stack = vec![(-bound, bound, variations(chain, -bound), variations(chain, bound))];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va.saturating_sub(vb);
        if count == 0 {
            continue;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            roots.push(b);
            continue;
        }
        if count == 1 {
            let (mut lo, mut hi, vlo) = (a, b, va);
            loop {
                let m = 0.5 * (lo + hi);
                if m <= lo || m >= hi {
                    break;
                }
                if vlo.saturating_sub(variations(chain, m)) >= 1 {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            roots.push(hi);
            continue;
        }
        let vm = variations(chain, mid);
        stack.push((mid, b, vm, vb));
        stack.push((a, mid, va, vm));
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// All real roots with multiplicity, via roots(p) = distinct(p) ∪ roots(gcd(p, p')).
fn real_roots_rec(p: &[f64], bound: f64) -> Vec<f64> {
    if p.len() < 2 {
        return Vec::new();
    }
    let chain = sturm_chain(p);
    let distinct = distinct_real_roots(&chain, bound);
    let gcd = chain.last().expect("non-empty chain");
    let mut out = distinct.clone();
    if gcd.len() >= 2 {
        for r in real_roots_rec(gcd, bound) {
            let snap = distinct.iter().copied().min_by(|a, b| (a - r).abs().total_cmp(&(b - r).abs())).unwrap_or(r);
            out.push(snap);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

fn is_real(c: &[C64]) -> bool {
    let size = c.iter().fold(0.0f64, |a, z| a.max(z.norm()));
    c.iter().all(|z| z.im.abs() <= 1e-14 * size)
}

/// Number of real roots (with multiplicity) of a monic polynomial; `None` if
/// the coefficients are not real.
pub(crate) fn real_root_count(c: &[C64]) -> Option<usize> {
    if !is_real(c) {
        return None;
    }
    let rho = root_scale(c);
    if rho == 0.0 {
        return Some(c.len() - 1);
    }
    let p: Vec<f64> = scaled(c, rho).iter().map(|z| z.re).collect();
    Some(real_roots_rec(&p, 2.5).len())
}

fn polish(c: &[C64], roots: &mut [C64]) {
    for r in roots.iter_mut() {
        let mut best = eval(c, *r).norm();
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(c, *r);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            let next = *r - p / dp;
            let val = eval(c, next).norm();
            if val < best {
                *r = next;
                best = val;
            } else {
                break;
            }
        }
    }
}

fn sort_roots(roots: &mut [C64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Real roots (ascending, with multiplicity) when the polynomial is hyperbolic.
pub(crate) fn hyperbolic_roots(c: &[C64]) -> Option<Vec<C64>> {
    let n = c.len() - 1;
    if !is_real(c) {
        return None;
    }
    let rho = root_scale(c);
    if rho == 0.0 {
        return Some(vec![C64::new(0.0, 0.0); n]);
    }
    let p: Vec<f64> = scaled(c, rho).iter().map(|z| z.re).collect();
    let roots = real_roots_rec(&p, 2.5);
    if roots.len() != n {
        return None;
    }
    let real_c: Vec<C64> = c.iter().map(|z| C64::new(z.re, 0.0)).collect();
    let mut out: Vec<C64> = roots.into_iter().map(|y| C64::new(y * rho, 0.0)).collect();
    // Newton polishing only for simple roots; multiple roots keep their common value.
    let simple: Vec<bool> = (0..n)
        .map(|i| (i == 0 || out[i - 1] != out[i]) && (i + 1 == n || out[i + 1] != out[i]))
        .collect();
    for (r, &s) in out.iter_mut().zip(&simple) {
        if s {
            let mut one = [*r];
            polish(&real_c, &mut one);
            *r = C64::new(one[0].re, 0.0);
        }
    }
    sort_roots(&mut out);
    Some(out)
}

/// All complex roots by Aberth–Ehrlich iteration on the scaled polynomial, Newton-polished.
pub(crate) fn complex_roots(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let rho = root_scale(c);
    if n == 0 {
        return Vec::new();
    }
    if rho == 0.0 {
        return vec![C64::new(0.0, 0.0); n];
    }
    let p = scaled(c, rho);
    let mut z: Vec<C64> =
        (0..n).map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();
    for _ in 0..500 {
        let mut biggest = 0.0f64;
        for k in 0..n {
            let (v, dv) = eval_with_derivative(&p, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let sum: C64 = (0..n).filter(|&j| j != k).map(|j| C64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * sum);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                biggest = biggest.max(w.norm());
            }
        }
        if biggest <= 1e-15 {
            break;
        }
    }
    let mut out: Vec<C64> = z.into_iter().map(|y| y * rho).collect();
    polish(c, &mut out);
    sort_roots(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_real(xs: &[f64]) -> Vec<C64> {
        xs.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    /// Ascending coefficients of ∏ (x − r).
    fn from_roots(roots: &[C64]) -> Vec<C64> {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        c
    }

    #[test]
    fn sturm_counts_real_roots() {
        assert_eq!(real_root_count(&from_real(&[-1.0, 0.0, 1.0])), Some(2));
        assert_eq!(real_root_count(&from_real(&[1.0, 0.0, 1.0])), Some(0));
        assert_eq!(real_root_count(&from_real(&[0.0, 0.0, 1.0])), Some(2));
        let c = from_roots(&from_real(&[1.0, 1.0, 1.0, -2.0]));
        assert_eq!(real_root_count(&c), Some(4));
        assert_eq!(real_root_count(&[C64::new(0.0, 1.0), C64::new(1.0, 0.0)]), None);
    }

    #[test]
    fn hyperbolic_roots_with_multiplicity() {
        let roots = from_real(&[-3.0, 0.5, 0.5, 2.0, 7.0]);
        let got = hyperbolic_roots(&from_roots(&roots)).unwrap();
        for (g, r) in got.iter().zip(&roots) {
            assert!((g - r).norm() < 1e-7, "{g} vs {r}");
        }
        assert!(hyperbolic_roots(&from_real(&[1.0, 0.0, 1.0])).is_none());
    }

    #[test]
    fn tiny_scale_roots() {
        let s = 1e-9;
        let got = hyperbolic_roots(&from_real(&[-s * s, 0.0, 1.0])).unwrap();
        assert!((got[0].re + s).abs() < 1e-24 && (got[1].re - s).abs() < 1e-24);
    }

    #[test]
    fn aberth_finds_complex_roots() {
        let roots = vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.0, -3.0), C64::new(2.0, 0.1)];
        let got = complex_roots(&from_roots(&roots));
        let mut want = roots.clone();
        sort_roots(&mut want);
        for (g, r) in got.iter().zip(&want) {
            assert!((g - r).norm() < 1e-12, "{g} vs {r}");
        }
        let cube = complex_roots(&from_real(&[-8.0, 0.0, 0.0, 1.0]));
        for r in cube {
            assert!((r.norm() - 2.0).abs() < 1e-13);
            assert!((r * r * r - 8.0).norm() < 1e-11);
        }
    }
}
