mod common;

use common::{c, det, elementary_symmetric, poly_from_roots, unitary, with_spectrum};
use eigentrack::family::Grid;
use eigentrack::matching::matching_distance;
use eigentrack::polyroots::{
    charpoly, estimate_substitution_order, hyperbolicity_check, substitute_power, track_roots, track_roots_with,
    PolynomialFamily, PowerSubstitution, RootMode,
};
use eigentrack::{Error, Tolerances, C64};
use proptest::prelude::*;

fn constant_family(roots: &[C64]) -> PolynomialFamily {
    let coeffs = elementary_symmetric(roots).into_iter().map(|a| vec![a]).collect();
    PolynomialFamily::from_polynomials(coeffs, (-1.0, 1.0)).unwrap()
}

/// xⁿ − t^m.
fn power(n: usize, m: usize) -> PolynomialFamily {
    let mut coeffs = vec![Vec::new(); n];
    let mut last = vec![c(0.0, 0.0); m + 1];
    last[m] = c(if n % 2 == 0 { -1.0 } else { 1.0 }, 0.0);
    coeffs[n - 1] = last;
    PolynomialFamily::from_polynomials(coeffs, (-1.0, 1.0)).unwrap()
}

#[test]
fn monic_coefficients_follow_the_oracle() {
    let roots = [c(1.0, 0.0), c(-2.0, 1.0), c(0.5, -0.5)];
    let p = constant_family(&roots);
    let ascending = poly_from_roots(&roots);
    let monic = p.monic_at(0.3);
    for (a, b) in monic.iter().zip(&ascending) {
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn substitution_orders() {
    for (n, m, want) in [(2, 1, 2), (3, 1, 3), (2, 2, 1), (2, 3, 2), (4, 1, 4)] {
        let est = estimate_substitution_order(&power(n, m), 0.0, 12).unwrap();
        assert_eq!(est.order, want, "x^{n} - t^{m}");
    }
    let est = estimate_substitution_order(&power(2, 3), 0.0, 12).unwrap();
    let cl = &est.branches[0].clusters[0];
    assert_eq!((cl.p, cl.q), (3, 2));
}

#[test]
fn substituted_roots_are_polynomial_in_s() {
    // x³ − t with t = s³: roots s·ω^k.
    let p = substitute_power(&power(3, 1), PowerSubstitution::new(0.0, 3, 0).unwrap()).unwrap();
    let grid = Grid::uniform(-1.0, 1.0, 41).unwrap();
    let b = track_roots(&p, &grid).unwrap();
    let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    for k in 0..grid.len() {
        let s = grid.t(k);
        let exact = [c(s, 0.0), w * s, w * w * s];
        assert!(matching_distance(&b.values_at(k), &exact).unwrap() < 1e-12);
    }
    // Each tracked curve is linear in s: second differences vanish.
    for curve in &b.curves {
        for k in 1..curve.len() - 1 {
            assert!((curve[k + 1] - curve[k] * 2.0 + curve[k - 1]).norm() < 1e-12);
        }
    }
}

#[test]
fn hyperbolicity() {
    let p = power(2, 1);
    assert!(hyperbolicity_check(&p, 0.5));
    assert!(!hyperbolicity_check(&p, -0.5));
    let grid = Grid::uniform(-1.0, 1.0, 11).unwrap();
    assert!(matches!(
        track_roots_with(&p, &grid, RootMode::Real, true, &Tolerances::default()),
        Err(Error::NotHyperbolic { .. })
    ));
    let positive = Grid::uniform(0.1, 1.0, 11).unwrap();
    let b = track_roots_with(&p, &positive, RootMode::Real, true, &Tolerances::default()).unwrap();
    assert!(b.curves.iter().flatten().all(|z| z.im == 0.0));
}

#[test]
fn smooth_crossing_of_hyperbolic_roots() {
    // x² − t²: roots ±t cross at 0 and continue as straight lines.
    let p = power(2, 2);
    let grid = Grid::uniform(-1.0, 1.0, 21).unwrap();
    let b = track_roots(&p, &grid).unwrap();
    for curve in &b.curves {
        let slope = (curve[20] - curve[0]) / 2.0;
        for k in 0..grid.len() {
            assert!((curve[k] - (curve[0] + slope * (grid.t(k) + 1.0))).norm() < 1e-12);
        }
    }
}

#[test]
fn charpoly_rejects_rectangular() {
    let a = eigentrack::ComplexMatrix::zeros(2, 3);
    assert!(charpoly(&a).is_err());
}

proptest! {
    #[test]
    fn roots_recover_planted_values(re in prop::collection::vec(-3.0f64..3.0, 1..7), im in prop::collection::vec(-3.0f64..3.0, 7)) {
        let roots: Vec<C64> = re.iter().zip(&im).map(|(&a, &b)| c(a, b)).collect();
        let p = constant_family(&roots);
        let found = p.roots_at(0.0);
        let min_sep = roots.iter().enumerate()
            .flat_map(|(i, a)| roots[i + 1..].iter().map(move |b| (a - b).norm()))
            .fold(f64::INFINITY, f64::min);
        prop_assume!(min_sep > 1e-2);
        prop_assert!(matching_distance(&found, &roots).unwrap() <= 1e-8);
    }

    #[test]
    fn charpoly_matches_determinant(seed in any::<u64>(), x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let values: Vec<C64> = (0..5).map(|k| c(k as f64 - 2.0, 0.3 * ((seed >> k) & 7) as f64)).collect();
        let a = with_spectrum(&unitary(5, seed), &values);
        let coeffs = charpoly(&a).unwrap();
        let expected = elementary_symmetric(&values);
        for (u, v) in coeffs.iter().zip(&expected) {
            prop_assert!((u - v).norm() <= 1e-9 * (1.0 + v.norm()));
        }
        // det(zI − A) = zⁿ − a₁zⁿ⁻¹ + a₂zⁿ⁻² − …
        let z = c(x, y);
        let mut p = z.powi(5);
        for (k, a_k) in coeffs.iter().enumerate() {
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            p += a_k * z.powi(4 - k as i32) * sign;
        }
        let d = det(&a.shifted(z)) * if a.rows() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((p - d).norm() <= 1e-9 * (1.0 + d.norm()));
    }
}
