use std::f64::consts::{FRAC_PI_8, SQRT_2};
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use super::output::{curves_csv, format_number, frames_csv, grid_summary, json_lines, push_complex};
use super::{Artifacts, CircleArg, Command, Common};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::family::spec::GeneratorSpec;
use crate::family::{paper_anchor, paper_eigenvalue, paper_example_family, paper_step, Grid, MatrixFamily, Structure};
use crate::linalg::{hermitian_eigen, inner, normal_eigen_with, ComplexMatrix, C64};
use crate::matching::{check_normal_bound_with, matching_distance, optimal_permutation};
use crate::par::par_map;
use crate::polyroots::{
    estimate_substitution_order_with, substitute_power, track_roots_with, PowerSubstitution, RootMode,
};
use crate::riesz::{auto_contour, compress, local_frame_with, rank_constancy_scan_with, Contour, ContourKind};
use crate::tracking::{
    crossing_detect_with, hoelder_quotient, sorted_vs_smooth, track_eigenvalues_with, track_eigenvectors_with,
    CurveBundle, Event,
};

pub(super) fn dispatch(command: &Command, art: &mut Artifacts) -> Result<()> {
    match command {
        Command::Track { common, frames } => track(common, *frames, art),
        Command::Riesz { common, contour, cluster } => riesz(common, *contour, cluster, art),
        Command::Match { a, b, matrices, tol, .. } => {
            let tol = Tolerances::default().with_overrides(tol.iter().map(String::as_str))?;
            matching(a, b, *matrices, &tol, art)
        }
        Command::Polyroots { common, substitute, estimate, k_max, real } => {
            polyroots(common, substitute.as_deref(), *estimate, *k_max, *real, art)
        }
        Command::Example { n_max, alpha, points, tol, .. } => {
            let tol = Tolerances::default().with_overrides(tol.iter().map(String::as_str))?;
            example(*n_max, alpha, *points, &tol, art)
        }
        Command::Diagnose { common, alpha, gap_tol, curves } => diagnose(common, alpha, *gap_tol, *curves, art),
    }
}

fn family_summary(f: &MatrixFamily) -> Value {
    json!({
        "size": f.size(),
        "domain": [f.domain().0, f.domain().1],
        "structure": f.structure(),
        "claimed_class": f.claimed_class(),
        "notes": f.notes(),
    })
}

/// Family, grid and tolerances from the shared flags, echoed into the report.
fn setup(common: &Common, art: &mut Artifacts) -> Result<(MatrixFamily, Grid, Tolerances)> {
    let tol = common.tolerances()?;
    let spec = common.spec()?;
    let family = spec.to_family()?;
    let grid = common.grid(family.domain())?;
    art.report_field("family", family_summary(&family));
    art.report_field("grid", grid_summary(&grid));
    art.report_field("tolerances", tol);
    art.report_field("refine", common.refine());
    Ok((family, grid, tol))
}

fn event_counts(events: &[Event]) -> Value {
    let count = |f: fn(&Event) -> bool| events.iter().filter(|e| f(e)).count();
    json!({
        "refinements": count(|e| matches!(e, Event::Refinement { .. })),
        "ambiguities": count(|e| matches!(e, Event::Ambiguity { .. })),
        "frame_refinements": count(|e| matches!(e, Event::FrameRefinement { .. })),
        "crossings": count(|e| matches!(e, Event::Crossing { .. })),
    })
}

fn check_real_curves(family: &MatrixFamily, bundle: &CurveBundle, art: &mut Artifacts) {
    if family.structure() != Structure::Hermitian {
        return;
    }
    let mut worst: f64 = 0.0;
    for c in &bundle.curves {
        for (z, &scale) in c.iter().zip(&bundle.scales) {
            worst = worst.max(z.im.abs() / scale.max(f64::MIN_POSITIVE));
        }
    }
    art.check("hermitian_curves_real", worst, 1e-10);
}

fn track(common: &Common, frames: bool, art: &mut Artifacts) -> Result<()> {
    let (family, grid, tol) = setup(common, art)?;
    let mut bundle = track_eigenvalues_with(&family, &grid, common.refine(), &tol)?;
    if frames {
        bundle = track_eigenvectors_with(&family, &bundle, common.refine(), &tol)?;
    }
    check_real_curves(&family, &bundle, art);
    art.file("curves.csv", curves_csv(&bundle, "t"));
    if let Some(fr) = &bundle.frames {
        art.file("frames.csv", frames_csv(&grid, fr));
        let max_angle = bundle.gauge_angles.iter().copied().fold(0.0, f64::max);
        art.report_field("max_gauge_angle", max_angle);
    }
    art.file("events.log", json_lines(&bundle.events));
    art.report_field("curves", bundle.curve_count());
    art.report_field("events", event_counts(&bundle.events));
    art.say(format!("tracked {} curves on {} points ({} events)", bundle.curve_count(), grid.len(), bundle.events.len()));
    Ok(())
}

fn contour_summary(c: &Contour) -> Value {
    match c.kind() {
        ContourKind::Circle { center, radius } => {
            json!({"kind": "circle", "center": [center.re, center.im], "radius": radius, "nodes": c.nodes()})
        }
        ContourKind::Polygon { vertices } => json!({
            "kind": "polygon",
            "vertices": vertices.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "nodes": c.nodes(),
        }),
    }
}

fn spectrum(a: &ComplexMatrix, structure: Structure, tol: &Tolerances) -> Result<Option<Vec<C64>>> {
    Ok(match structure {
        Structure::Hermitian => Some(hermitian_eigen(&a.hermitian_part())?.eigenvalues),
        Structure::Normal => Some(normal_eigen_with(a, tol)?.eigenvalues),
        Structure::General => None,
    })
}

fn riesz(common: &Common, contour: Option<CircleArg>, cluster: &[usize], art: &mut Artifacts) -> Result<()> {
    let (family, grid, tol) = setup(common, art)?;
    let contour = match (contour, cluster.is_empty()) {
        (Some(c), _) => Contour::circle(C64::new(c.re, c.im), c.radius)?,
        (None, false) => auto_contour(&family, grid.t(0), cluster)?,
        (None, true) => common.spec()?.contour()?.ok_or_else(|| {
            Error::Config("a contour is needed: --contour, --cluster or `contour` in the family spec".into())
        })?,
    };
    art.report_field("contour", contour_summary(&contour));
    let profile = rank_constancy_scan_with(&family, &grid, &contour, &tol)?;
    let bundle = local_frame_with(&family, &grid, &contour, None, &tol)?;

    let mut proj = String::from("t,rank,trace_re,trace_im,idempotency_defect,hermitian_defect,commutator_defect,nodes\n");
    let (mut idem, mut herm, mut comm, mut trace_err): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for (k, p) in profile.projectors.iter().enumerate() {
        let a_norm = family.at_offset(grid.anchor(), grid.offsets()[k]).frobenius_norm();
        idem = idem.max(p.idempotency_defect);
        herm = herm.max(p.hermitian_defect);
        comm = comm.max(p.commutator_defect / a_norm.max(f64::MIN_POSITIVE));
        trace_err = trace_err.max((p.trace - C64::new(p.rank as f64, 0.0)).norm());
        let _ = write!(proj, "{},{}", format_number(grid.t(k)), p.rank);
        push_complex(&mut proj, p.trace);
        let _ = writeln!(
            proj,
            ",{},{},{},{}",
            format_number(p.idempotency_defect),
            format_number(p.hermitian_defect),
            format_number(p.commutator_defect),
            p.nodes
        );
    }
    art.check("projector_idempotency", idem, tol.projector_defect);
    if family.structure() != Structure::General {
        art.check("projector_hermitian", herm, tol.projector_defect);
    }
    art.check("projector_commutator_relative", comm, tol.projector_defect);
    art.check("projector_trace_vs_rank", trace_err, 1e-6);

    let rank = bundle.rank;
    let mut compressed = String::from("t");
    for i in 1..=rank {
        let _ = write!(compressed, ",re_{i},im_{i}");
    }
    compressed.push('\n');
    let mut worst: f64 = 0.0;
    for (k, frame) in bundle.frames.iter().enumerate() {
        let a = family.at_offset(grid.anchor(), grid.offsets()[k]);
        let c = compress(&a, frame, &tol)?;
        if let Some(values) = spectrum(&a, family.structure(), &tol)? {
            let enclosed: Vec<C64> = values.into_iter().filter(|&z| contour.encloses(z)).collect();
            let mut mu = spectrum(&c, family.structure(), &tol)?.expect("structure is not general");
            mu.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
            let d = matching_distance(&mu, &enclosed).unwrap_or(f64::INFINITY);
            worst = worst.max(d / a.frobenius_norm().max(f64::MIN_POSITIVE));
            compressed.push_str(&format_number(grid.t(k)));
            for z in mu {
                push_complex(&mut compressed, z);
            }
            compressed.push('\n');
        }
    }
    if family.structure() != Structure::General {
        art.check("compression_spectrum_distance_relative", worst, 1e-8);
        art.file("compressed.csv", compressed);
    }
    art.file("projectors.csv", proj);
    art.file("frames.csv", frames_csv(&grid, &bundle.frames));
    let restarts: Vec<Value> = bundle
        .restarts
        .iter()
        .map(|r| json!({"event": "frame_restart", "index": r.index, "t": r.t, "ratio": r.ratio}))
        .collect();
    art.file("events.log", json_lines(&restarts));
    art.report_field("rank", rank);
    art.report_field("frame_restarts", restarts.len());
    art.say(format!("rank {rank} on {} points, {} frame restarts", grid.len(), restarts.len()));
    Ok(())
}

fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|x| {
                x.trim().parse::<f64>().map_err(|_| {
                    Error::Config(format!("{}:{}: `{}` is not a number", path.display(), line_no + 1, x.trim()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Config(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

fn read_spectrum(path: &Path) -> Result<Vec<C64>> {
    read_rows(path)?
        .into_iter()
        .map(|r| match r[..] {
            [re] => Ok(C64::new(re, 0.0)),
            [re, im] => Ok(C64::new(re, im)),
            _ => Err(Error::Config(format!("{}: spectrum rows are `re` or `re,im`", path.display()))),
        })
        .collect()
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let rows = read_rows(path)?;
    let n = rows.len();
    let data: Vec<C64> = if rows.iter().all(|r| r.len() == 2 * n) {
        rows.iter().flat_map(|r| r.chunks(2).map(|p| C64::new(p[0], p[1]))).collect()
    } else if rows.iter().all(|r| r.len() == n) {
        rows.iter().flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0))).collect()
    } else {
        return Err(Error::Config(format!(
            "{}: a {n}-row matrix needs {n} real or {} (re,im) entries per row",
            path.display(),
            2 * n
        )));
    };
    ComplexMatrix::new(n, n, data)
}

fn matching(a: &Path, b: &Path, matrices: bool, tol: &Tolerances, art: &mut Artifacts) -> Result<()> {
    art.report_field("tolerances", tol);
    let (sa, sb) = if matrices {
        let (ma, mb) = (read_matrix(a)?, read_matrix(b)?);
        let bound = check_normal_bound_with(&ma, &mb, tol)?;
        let hermitian = [&ma, &mb].iter().all(|m| m.hermitian_defect() <= tol.hermitian_check * m.frobenius_norm().max(1.0));
        if hermitian {
            art.check("hermitian_lipschitz_ratio", bound.ratio, 1.0 + 1e-9);
        } else {
            art.check("normal_bound_ratio", bound.ratio, crate::matching::NORMAL_BOUND_CONSTANT);
        }
        art.report_field("norm", bound.norm);
        art.report_field("ratio", bound.ratio);
        (normal_eigen_with(&ma, tol)?.eigenvalues, normal_eigen_with(&mb, tol)?.eigenvalues)
    } else {
        (read_spectrum(a)?, read_spectrum(b)?)
    };
    let d = matching_distance(&sa, &sb)?;
    let perm = optimal_permutation(&sa, &sb)?;
    art.report_field("d", d);
    art.report_field("permutation", &perm);
    let mut csv = String::from("i,a_re,a_im,b_re,b_im,distance\n");
    for (i, &j) in perm.iter().enumerate() {
        let _ = write!(csv, "{}", i + 1);
        push_complex(&mut csv, sa[i]);
        push_complex(&mut csv, sb[j]);
        let _ = writeln!(csv, ",{}", format_number((sa[i] - sb[j]).norm()));
    }
    art.file("pairing.csv", csv);
    art.say(format!("d = {d}"));
    if matrices {
        let r = art.report();
        let (norm, ratio) = (r["norm"].clone(), r["ratio"].clone());
        art.say(format!("norm = {norm}"));
        art.say(format!("ratio = {ratio}"));
    }
    Ok(())
}

fn parse_substitution(args: &[String]) -> Result<PowerSubstitution> {
    let [t0, n, eps] = args else {
        return Err(Error::Config("--substitute takes T0 N EPS".into()));
    };
    let t0: f64 = t0.parse().map_err(|_| Error::Config(format!("bad T0 `{t0}`")))?;
    let n: usize = n.parse().map_err(|_| Error::Config(format!("bad N `{n}`")))?;
    let epsilon = match eps.as_str() {
        "+" | "+1" | "1" | "plus" => 0,
        "-" | "-1" | "minus" => 1,
        other => return Err(Error::Config(format!("EPS must be + or -, got `{other}`"))),
    };
    PowerSubstitution::new(t0, n, epsilon)
}

/// Largest first and second divided differences of each curve.
fn divided_differences(bundle: &CurveBundle) -> Vec<(f64, f64)> {
    let x = bundle.grid.offsets();
    bundle
        .curves
        .iter()
        .map(|c| {
            let d1: Vec<C64> = (1..x.len()).map(|k| (c[k] - c[k - 1]) / (x[k] - x[k - 1])).collect();
            let first = d1.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let second = (1..d1.len())
                .map(|k| ((d1[k] - d1[k - 1]) / (x[k + 1] - x[k - 1])).norm() * 2.0)
                .fold(0.0, f64::max);
            (first, second)
        })
        .collect()
}

fn polyroots(
    common: &Common,
    substitute: Option<&[String]>,
    estimate: Option<f64>,
    k_max: usize,
    real: bool,
    art: &mut Artifacts,
) -> Result<()> {
    let tol = common.tolerances()?;
    let p = common.spec()?.to_polynomial()?;
    art.report_field("degree", p.degree());
    art.report_field("tolerances", tol);
    art.report_field("refine", common.refine());
    if let Some(t0) = estimate {
        let order = estimate_substitution_order_with(&p, t0, k_max, &tol)?;
        art.say(format!("substitution order at t0 = {t0}: N = {}", order.order));
        for b in &order.branches {
            let sign = if b.epsilon == 0 { '+' } else { '-' };
            for c in &b.clusters {
                art.say(format!("  branch {sign}: cluster of {} roots, exponent {}/{}", c.size, c.p, c.q));
            }
        }
        art.report_field("substitution_order", &order);
    }
    let (family, first) = match substitute {
        Some(args) => {
            let sub = parse_substitution(args)?;
            art.report_field("substitution", sub);
            (substitute_power(&p, sub)?, "s")
        }
        None => (p, "t"),
    };
    let grid = common.grid(family.domain())?;
    art.report_field("grid", grid_summary(&grid));
    let mode = if real { RootMode::Real } else { RootMode::Auto };
    let bundle = track_roots_with(&family, &grid, mode, common.refine(), &tol)?;
    let dd: Vec<Value> = divided_differences(&bundle)
        .into_iter()
        .map(|(a, b)| json!({"max_first": a, "max_second": b}))
        .collect();
    art.report_field("divided_differences", dd);
    art.report_field("events", event_counts(&bundle.events));
    art.file("curves.csv", curves_csv(&bundle, first));
    art.file("events.log", json_lines(&bundle.events));
    art.say(format!("tracked {} roots on {} points", bundle.curve_count(), grid.len()));
    Ok(())
}

/// Closed form of the Hölder quotient at (t_n, s_n).
fn paper_quotient(n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    (n * (alpha * (n - 1.0) - 1.0)).exp2() / SQRT_2
}

fn positive_eigenvector(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let dec = hermitian_eigen(a)?;
    let k = (0..dec.eigenvalues.len())
        .max_by(|&i, &j| dec.eigenvalues[i].re.total_cmp(&dec.eigenvalues[j].re))
        .expect("non-empty");
    Ok(dec.eigenvectors.column(k))
}

/// Per-n Hölder quotients of the positive curve at (t_n, s_n).
fn quotient_table(family: &MatrixFamily, n_max: usize, alpha: &[f64], art: &mut Artifacts) -> Result<()> {
    let mut csv = String::from("n,alpha,quotient,closed_form,rel_error\n");
    let mut worst: f64 = 0.0;
    art.say("n  alpha  quotient  closed_form  rel_error");
    for &a in alpha {
        let mut prev = f64::NEG_INFINITY;
        let mut increasing = true;
        for n in 1..=n_max {
            let q = hoelder_quotient(family, 1, paper_anchor(n), paper_step(n), a)?;
            let exact = paper_quotient(n, a);
            let rel = (q - exact).abs() / exact;
            if n >= 3 {
                worst = worst.max(rel);
            }
            if n >= 4 && q <= prev {
                increasing = false;
            }
            prev = q;
            let _ = writeln!(csv, "{n},{},{},{},{}", format_number(a), format_number(q), format_number(exact), format_number(rel));
            art.say(format!("{n}  {a}  {q:.6e}  {exact:.6e}  {rel:.2e}"));
        }
        if a > 0.0 && n_max >= 5 {
            art.check(&format!("hoelder_quotient_increasing_alpha_{a}"), if increasing { 0.0 } else { 1.0 }, 0.0);
        }
    }
    art.check("hoelder_quotient_rel_error", worst, 0.01);
    art.file("quotients.csv", csv);
    Ok(())
}

fn example(n_max: usize, alpha: &[f64], points: usize, tol: &Tolerances, art: &mut Artifacts) -> Result<()> {
    let family = paper_example_family(n_max)?;
    art.report_field("family", family_summary(&family));
    art.report_field("tolerances", tol);
    art.report_field("alpha", alpha);

    let mut curves = String::from("n,offset,re_plus,im_plus,re_minus,im_minus,closed_form\n");
    let mut worst: f64 = 0.0;
    for n in 1..=n_max {
        let hw = 1.0 / (n * n) as f64;
        let grid = Grid::stretched(paper_anchor(n), -hw, hw, points, paper_step(n))?;
        let bundle = track_eigenvalues_with(&family, &grid, true, tol)?;
        let plus = if bundle.curves[0][0].re > 0.0 { 0 } else { 1 };
        for (k, &s) in grid.offsets().iter().enumerate() {
            let exact = paper_eigenvalue(n, s);
            let (p, m) = (bundle.curves[plus][k], bundle.curves[1 - plus][k]);
            worst = worst.max((p - exact).norm() / exact).max((m + exact).norm() / exact);
            let _ = write!(curves, "{n},{}", format_number(s));
            push_complex(&mut curves, p);
            push_complex(&mut curves, m);
            let _ = writeln!(curves, ",{}", format_number(exact));
        }
    }
    art.check("eigenvalue_formula_rel_error", worst, 1e-10);
    art.file("curves.csv", curves);

    quotient_table(&family, n_max, alpha, art)?;

    let mut angles = String::from("n,angle,expected\n");
    let mut angle_err: f64 = 0.0;
    for n in 1..=n_max {
        let u = positive_eigenvector(&family.at_offset(paper_anchor(n), 0.0))?;
        let v = positive_eigenvector(&family.at_offset(paper_anchor(n), paper_step(n)))?;
        let angle = inner(&u, &v).norm().min(1.0).acos();
        angle_err = angle_err.max((angle - FRAC_PI_8).abs());
        let _ = writeln!(angles, "{n},{},{}", format_number(angle), format_number(FRAC_PI_8));
    }
    art.check("eigenvector_angle_error", angle_err, 1e-8);
    art.file("angles.csv", angles);
    art.say(format!("eigenvalue formula: max relative error {worst:.3e}"));
    art.say(format!("eigenvector angle: max deviation from pi/8 {angle_err:.3e}"));
    Ok(())
}

fn diagnose(common: &Common, alpha: &[f64], gap_tol: f64, curves: Option<usize>, art: &mut Artifacts) -> Result<()> {
    let (family, grid, tol) = setup(common, art)?;
    let spec = common.spec()?;
    art.report_field("alpha", alpha);
    art.report_field("gap_tol", gap_tol);
    let bundle = track_eigenvalues_with(&family, &grid, common.refine(), &tol)?;
    check_real_curves(&family, &bundle, art);
    let crossings = crossing_detect_with(&bundle, gap_tol, &tol);
    let mut events = bundle.events.clone();
    events.extend(crossings.iter().map(|c| Event::Crossing {
        t_star: c.t_star,
        pair: c.pair,
        gap_min: c.gap_min,
        order: c.order_estimate,
        infinite_order_suspect: c.infinite_order_suspect,
    }));
    art.say(format!("{} crossing(s)", crossings.len()));
    for c in &crossings {
        let order = c.order_estimate.map_or("none".to_string(), |o| o.to_string());
        art.say(format!(
            "  t* = {:.12e}  curves {}-{}  gap {:.3e}  order {order}{}",
            c.t_star,
            c.pair.0 + 1,
            c.pair.1 + 1,
            c.gap_min,
            if c.infinite_order_suspect { "  (flat contact suspected)" } else { "" }
        ));
    }
    art.report_field("crossings", &crossings);
    art.report_field("sorted_jumps", sorted_vs_smooth(&bundle).jumps);

    if let GeneratorSpec::PaperExample { n_max } = spec.generator {
        quotient_table(&family, n_max, alpha, art)?;
    } else {
        let m = curves.unwrap_or(bundle.curve_count()).min(bundle.curve_count());
        let x = grid.offsets();
        // The quotient's chart reaches s/100 beyond both ends of a step.
        let inside: Vec<usize> = (0..grid.len() - 1)
            .filter(|&k| {
                let pad = 1e-2 * (x[k + 1] - x[k]);
                family.contains(grid.t(k) - pad) && family.contains(grid.t(k + 1) + pad)
            })
            .collect();
        let steps: Vec<(usize, usize)> = (0..m).flat_map(|c| inside.iter().map(move |&k| (c, k))).collect();
        // The α = 0 quotient is the derivative jump; other exponents rescale it.
        let jumps = par_map(&steps, |&(c, k)| hoelder_quotient(&family, c, grid.t(k), x[k + 1] - x[k], 0.0));
        let mut csv = String::from("alpha,curve,t,s,quotient\n");
        let mut summary = Vec::new();
        for &a in alpha {
            for c in 0..m {
                let mut best = (f64::NEG_INFINITY, f64::NAN);
                for (idx, &(cc, k)) in steps.iter().enumerate() {
                    if cc != c {
                        continue;
                    }
                    let s = x[k + 1] - x[k];
                    let q = jumps[idx].clone()? / s.powf(a);
                    if q > best.0 {
                        best = (q, grid.t(k));
                    }
                    let _ = writeln!(
                        csv,
                        "{},{},{},{},{}",
                        format_number(a),
                        c + 1,
                        format_number(grid.t(k)),
                        format_number(s),
                        format_number(q)
                    );
                }
                summary.push(json!({"alpha": a, "curve": c + 1, "max_quotient": best.0, "at": best.1}));
            }
        }
        art.report_field("hoelder", summary);
        art.file("hoelder.csv", csv);
    }
    art.file("curves.csv", curves_csv(&bundle, "t"));
    art.file("events.log", json_lines(&events));
    art.report_field("events", event_counts(&events));
    Ok(())
}
