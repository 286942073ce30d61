mod common;

use std::sync::Arc;

use common::{c, dirichlet_eigenvalue};
use eigentrack::family::spec::FamilySpec;
use eigentrack::family::{
    glued_family, paper_anchor, paper_eigenvalue, paper_example_family, paper_segment, paper_step, sample,
    schrodinger_family, Grid, MatrixFamily, SegmentSpec, Structure,
};
use eigentrack::linalg::hermitian_eigen;
use eigentrack::{ComplexMatrix, Error};
use proptest::prelude::*;

#[test]
fn paper_segments_have_closed_form_spectra() {
    let f = paper_example_family(8).unwrap();
    for n in 1..=8 {
        let reach = paper_step(n).min(1.0 / (n * n) as f64);
        for s in [-0.5, 0.0, 0.5, 1.0].map(|x| x * reach) {
            let ev = hermitian_eigen(&f.at_offset(paper_anchor(n), s)).unwrap().real_eigenvalues();
            let exact = paper_eigenvalue(n, s);
            assert!((ev[1] - exact).abs() <= 1e-14 * exact, "n={n}");
            assert!((ev[0] + exact).abs() <= 1e-14 * exact, "n={n}");
        }
    }
}

#[test]
fn anchors_increase_and_segments_are_disjoint() {
    for n in 1..30 {
        let right = paper_anchor(n) + 1.0 / (n * n) as f64;
        let left = paper_anchor(n + 1) - 1.0 / ((n + 1) * (n + 1)) as f64;
        assert!(right < left, "n={n}");
    }
    assert!(paper_anchor(30) < std::f64::consts::PI.powi(2) / 3.0);
    assert!(paper_example_family(0).is_err());
    assert!(paper_example_family(31).is_err());
}

#[test]
fn overlapping_segments_are_rejected() {
    let mut s2 = paper_segment(2);
    s2.anchor = paper_anchor(1) + 0.5;
    assert!(matches!(glued_family(vec![paper_segment(1), s2], 0.0), Err(Error::OverlappingSegments { .. })));
    let mut wide = paper_segment(3);
    wide.half_width = 0.5;
    assert!(glued_family(vec![wide], 0.0).is_err());
}

#[test]
fn glued_family_is_constant_outside_and_continuous_between() {
    let segs: Vec<SegmentSpec> = (1..=3).map(paper_segment).collect();
    let f = glued_family(segs, 0.0).unwrap();
    let left = paper_anchor(1) - 1.0;
    assert_eq!(f.at(left - 5.0), f.at(left));
    // Continuity at the segment ends.
    for n in 1..3 {
        let end = paper_anchor(n) + 1.0 / (n * n) as f64;
        let jump = (&f.at(end + 1e-12) - &f.at(end)).frobenius_norm();
        assert!(jump < 1e-9, "n={n} jump={jump}");
    }
}

#[test]
fn schrodinger_free_spectrum() {
    let n = 200;
    let len = std::f64::consts::PI;
    let f = schrodinger_family(Arc::new(|_, _| 0.0), n, (0.0, len)).unwrap();
    let a = f.at(0.3);
    let ev = eigentrack::linalg::tridiagonal_eigenvalues(
        &(0..n).map(|i| a[(i, i)].re).collect::<Vec<_>>(),
        &(0..n - 1).map(|i| a[(i, i + 1)].re).collect::<Vec<_>>(),
    );
    for k in 0..5 {
        let exact = dirichlet_eigenvalue(k + 1, n, len);
        assert!((ev[k] - exact).abs() <= 1e-10 * exact);
    }
    assert_eq!(f.structure(), Structure::Hermitian);
}

#[test]
fn spec_files_in_repo_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let spec = FamilySpec::from_path(&path).unwrap();
        assert!(spec.to_family().is_ok() || spec.to_polynomial().is_ok(), "{}", path.display());
        count += 1;
    }
    assert!(count >= 5);
}

#[test]
fn spec_rejects_structure_mismatch() {
    let e = FamilySpec::from_json(
        r#"{"size": 3, "domain": [0, 1], "generator": {"kind": "paper_example", "n_max": 2}}"#,
    )
    .unwrap()
    .to_family()
    .unwrap_err();
    assert!(matches!(e, Error::Config(_)));
}

#[test]
fn sampling_checks_structure() {
    let f = MatrixFamily::from_fn(2, (0.0, 1.0), Structure::Hermitian, |t| {
        ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(t, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap()
    })
    .unwrap();
    let grid = Grid::uniform(0.0, 1.0, 3).unwrap();
    assert!(matches!(sample(&f, &grid), Err(Error::StructureViolation { .. })));
}

proptest! {
    #[test]
    fn chart_evaluation_matches_absolute(n in 1usize..=6, u in -1.0f64..1.0) {
        // Where t_n + s is exact, both evaluations agree.
        let f = paper_example_family(6).unwrap();
        let s = u / (n * n) as f64;
        let t = paper_anchor(n) + s;
        let back = t - paper_anchor(n);
        prop_assert!((&f.at(t) - &f.at_offset(paper_anchor(n), back)).frobenius_norm() <= 1e-15);
    }
}
