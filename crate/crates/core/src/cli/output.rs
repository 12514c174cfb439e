//! CSV, SVG and manifest files of a run, and readers for them.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::sim::{Trajectory, RECTANGLE_TOLERANCE};

pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const MANIFEST_FILE: &str = "run.json";
pub const PLOT_FILE: &str = "plot.svg";
pub const SWEEP_FILE: &str = "sweep.csv";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let n = traj.u.first().map_or(0, Vec::len);
    let header: Vec<String> = if traj.grid.is_some() {
        std::iter::once("t".to_string())
            .chain((0..n).map(|j| format!("u_{j}")))
            .chain((0..n).map(|j| format!("v_{j}")))
            .collect()
    } else {
        vec!["t".into(), "u".into(), "v".into()]
    };
    w.write_record(&header)?;
    for k in 0..traj.len() {
        let row = std::iter::once(traj.times[k])
            .chain(traj.u[k].iter().copied())
            .chain(traj.v[k].iter().copied())
            .map(fmt_num);
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_diagnostics_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "dist_sup", "in_rect", "V"])?;
    for (t, d) in traj.times.iter().zip(&traj.diagnostics) {
        w.write_record([
            fmt_num(*t),
            fmt_num(d.dist_sup),
            (d.rect_excess <= RECTANGLE_TOLERANCE).to_string(),
            fmt_opt(d.lyapunov_v),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// A CSV file of numbers with a header row. Empty cells read as `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Reads a numeric CSV; `true`/`false` cells become 1/0.
pub fn read_table(path: &Path) -> Result<Table> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|cell| match cell {
                "" => Ok(None),
                "true" => Ok(Some(1.0)),
                "false" => Ok(Some(0.0)),
                s => s
                    .parse()
                    .map(Some)
                    .map_err(|_| Error::Io(format!("{}: not a number: `{s}`", path.display()))),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config_sha256: String,
    /// Canonical config text; its SHA-256 is `config_sha256`.
    pub config: String,
    pub mode: String,
    pub equilibrium: Option<(f64, f64)>,
    pub global_verdict: Option<String>,
    pub turing_verdict: Option<String>,
    pub snapshots: usize,
    pub final_distance: f64,
    pub converged: bool,
    pub lyapunov_monotone: Option<bool>,
    pub files: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn write_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    let mut text = serde_json::to_string_pretty(manifest)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_manifest(path: &Path) -> Result<RunManifest> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 400.0;
const MARGIN: f64 = 48.0;

fn polyline(
    xs: &[f64],
    ys: &[f64],
    x_range: (f64, f64),
    y_range: (f64, f64),
    color: &str,
) -> String {
    let sx = |x: f64| MARGIN + (x - x_range.0) / (x_range.1 - x_range.0) * (SVG_W - 2.0 * MARGIN);
    let sy = |y: f64| {
        SVG_H - MARGIN - (y - y_range.0) / (y_range.1 - y_range.0) * (SVG_H - 2.0 * MARGIN)
    };
    let mut pts = String::new();
    for (&x, &y) in xs.iter().zip(ys) {
        let _ = write!(pts, "{:.2},{:.2} ", sx(x), sy(y));
    }
    format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        pts.trim_end()
    )
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|x| x.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
            (a.min(x), b.max(x))
        });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// `u` and `v` against time for ODE runs, final profiles against `x` for
/// PDE runs.
pub fn render_svg(spec: &ModelSpec, traj: &Trajectory) -> String {
    let (xs, u, v, xlabel) = match &traj.grid {
        Some(grid) => {
            let last = traj.len() - 1;
            (
                grid.nodes().collect::<Vec<_>>(),
                traj.u[last].clone(),
                traj.v[last].clone(),
                "x",
            )
        }
        None => (
            traj.times.clone(),
            traj.u.iter().map(|s| s[0]).collect(),
            traj.v.iter().map(|s| s[0]).collect(),
            "t",
        ),
    };
    let xr = range(xs.iter().copied());
    let yr = range(u.iter().chain(&v).copied());
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_W}\" height=\"{SVG_H}\" \
         viewBox=\"0 0 {SVG_W} {SVG_H}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>",
        SVG_W - 2.0 * MARGIN,
        SVG_H - 2.0 * MARGIN
    );
    svg.push_str(&polyline(&xs, &u, xr, yr, "#1f77b4"));
    svg.push_str(&polyline(&xs, &v, xr, yr, "#d62728"));
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{xlabel}</text>",
        SVG_W / 2.0,
        SVG_H - 12.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"{MARGIN}\" y=\"{}\">{:.4}</text>",
        SVG_H - MARGIN + 16.0,
        xr.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.4}</text>",
        SVG_W - MARGIN,
        SVG_H - MARGIN + 16.0,
        xr.1
    );
    let _ = writeln!(
        svg,
        "<text x=\"4\" y=\"{}\">{:.4}</text>",
        SVG_H - MARGIN,
        yr.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"4\" y=\"{}\">{:.4}</text>",
        MARGIN + 4.0,
        yr.1
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"30\" fill=\"#1f77b4\">u</text><text x=\"{}\" y=\"30\" fill=\"#d62728\">v</text>",
        SVG_W - MARGIN - 40.0,
        SVG_W - MARGIN - 20.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"{MARGIN}\" y=\"30\">f = {}, g = {}, phi = {}</text>",
        escape(spec.f.name()),
        escape(spec.g.name()),
        escape(spec.phi.name())
    );
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
