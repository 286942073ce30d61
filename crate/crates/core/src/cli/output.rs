use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::family::Grid;
use crate::linalg::C64;
use crate::tracking::CurveBundle;

/// 17 significant digits; parses back to the same `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// A named invariant check with its measured value and limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

/// Files, report fields and console text of one run.
#[derive(Debug)]
pub struct Artifacts {
    files: Vec<(String, String)>,
    report: Map<String, Value>,
    checks: Vec<Check>,
    stdout: String,
}

impl Artifacts {
    pub fn new(command: &str) -> Self {
        let mut report = Map::new();
        report.insert("command".into(), json!(command));
        report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        Self { files: Vec::new(), report, checks: Vec::new(), stdout: String::new() }
    }

    pub fn file(&mut self, name: &str, contents: String) {
        self.files.push((name.to_string(), contents));
    }

    pub fn files(&self) -> &[(String, String)] {
        &self.files
    }

    pub fn report_field(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.report.insert(key.to_string(), v);
    }

    pub fn report(&self) -> &Map<String, Value> {
        &self.report
    }

    /// Records `value ≤ limit`.
    pub fn check(&mut self, name: &str, value: f64, limit: f64) {
        self.checks.push(Check { name: name.to_string(), value, limit, pass: value <= limit });
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn say(&mut self, line: impl AsRef<str>) {
        self.stdout.push_str(line.as_ref());
        self.stdout.push('\n');
    }

    pub fn stdout(&self) -> &str {
        &self.stdout
    }

    pub fn set_error(&mut self, e: &Error) {
        self.report.insert("error".into(), json!({ "name": e.name(), "message": e.to_string() }));
    }

    pub fn set_exit_code(&mut self, code: i32) {
        self.report.insert("exit_code".into(), json!(code));
    }

    fn report_text(&self) -> String {
        let mut report = self.report.clone();
        report.insert("checks".into(), serde_json::to_value(&self.checks).expect("checks serialize"));
        let mut s = serde_json::to_string_pretty(&Value::Object(report)).expect("report serializes");
        s.push('\n');
        s
    }

    /// Writes the report, and the data files when `with_files` is set.
    pub fn write(&self, dir: &Path, with_files: bool) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        if with_files {
            for (name, contents) in &self.files {
                let path = dir.join(name);
                std::fs::write(&path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
        }
        let path = dir.join("report.json");
        std::fs::write(&path, self.report_text()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// `t,re_1,im_1,…` (with an `offset` column for anchored grids), one row per grid point.
pub fn curves_csv(bundle: &CurveBundle, first: &str) -> String {
    let grid = &bundle.grid;
    let anchored = grid.anchor() != 0.0;
    let mut s = String::from(first);
    if anchored {
        s.push_str(",offset");
    }
    for i in 1..=bundle.curve_count() {
        let _ = write!(s, ",re_{i},im_{i}");
    }
    s.push('\n');
    for k in 0..grid.len() {
        s.push_str(&format_number(grid.t(k)));
        if anchored {
            s.push(',');
            s.push_str(&format_number(grid.offsets()[k]));
        }
        for c in &bundle.curves {
            push_complex(&mut s, c[k]);
        }
        s.push('\n');
    }
    s
}

pub fn push_complex(s: &mut String, z: C64) {
    s.push(',');
    s.push_str(&format_number(z.re));
    s.push(',');
    s.push_str(&format_number(z.im));
}

/// `t,curve,component,re,im`, one row per frame entry.
pub fn frames_csv(grid: &Grid, frames: &[crate::linalg::ComplexMatrix]) -> String {
    let mut s = String::from("t,column,component,re,im\n");
    for (k, f) in frames.iter().enumerate() {
        for j in 0..f.cols() {
            for i in 0..f.rows() {
                s.push_str(&format_number(grid.t(k)));
                let _ = write!(s, ",{},{}", j + 1, i + 1);
                push_complex(&mut s, f[(i, j)]);
                s.push('\n');
            }
        }
    }
    s
}

/// One JSON record per line.
pub fn json_lines<T: Serialize>(records: &[T]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialize"));
        s.push('\n');
    }
    s
}

pub fn grid_summary(grid: &Grid) -> Value {
    json!({
        "anchor": grid.anchor(),
        "lo": grid.offsets()[0],
        "hi": grid.offsets()[grid.len() - 1],
        "points": grid.len(),
    })
}
