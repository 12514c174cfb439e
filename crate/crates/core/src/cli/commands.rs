//! The four commands, as library functions returning structured results.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{
    classify_pde_stability, find_equilibrium, EquilibriumReport, SpectrumConfig, TuringReport,
};
use crate::bounds::{
    check_invariant_rectangle, compute_bounds, BoundsReport, Decomposition, RectangleCheck,
};
use crate::error::{Error, Result};
use crate::lyapunov::{attach_lyapunov, check_monotone, verdict_global, LyapunovConfig};
use crate::model::{check_hypotheses, HypothesisReport, ModelSpec, DEFAULT_HYPOTHESIS_GRID};
use crate::sim::{
    integrate_ode_with, integrate_pde_1d_with, sweep_with_threads, Scenario, SimMode, SimOptions,
    Trajectory,
};

use super::config::RunConfig;
use super::output::{
    fmt_num, render_svg, write_diagnostics_csv, write_manifest, write_trajectory_csv, RunManifest,
    DIAGNOSTICS_FILE, MANIFEST_FILE, PLOT_FILE, TRAJECTORY_FILE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LOAD: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_ROOT: i32 = 3;
pub const EXIT_BLOWUP: i32 = 4;

/// Process exit code for an error surfaced by a command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Precondition(_) => EXIT_PRECONDITION,
        Error::Root(_) | Error::MultiRoot { .. } | Error::Truncation { .. } => EXIT_ROOT,
        Error::Blowup { .. } | Error::Step { .. } => EXIT_BLOWUP,
        _ => EXIT_LOAD,
    }
}

const BOUNDS_SCAN_POINTS: usize = 20_000;
const MONOTONE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub preset: String,
    pub params: BTreeMap<String, f64>,
    pub delta: f64,
    pub equilibrium: Option<EquilibriumReport>,
    pub hypotheses: Option<HypothesisReport>,
    pub turing: Option<TuringReport>,
    pub turing_error: Option<String>,
    pub invariant_rectangle: Option<RectangleCheck>,
    pub bounds: Option<BoundsReport>,
    pub bounds_error: Option<String>,
    pub global_verdict: Option<String>,
    pub status: String,
    pub exit_code: i32,
}

fn bounds_for(spec: &ModelSpec, u0: (f64, f64), v0: (f64, f64)) -> Result<BoundsReport> {
    let dec = Decomposition::for_preset(spec, spec.delta.max(u0.1), BOUNDS_SCAN_POINTS)?;
    compute_bounds(spec, &dec, u0, v0)
}

/// Everything the analysis modules can say about a config. Errors in the
/// model build are returned; later failures are recorded in the report
/// and reflected in `exit_code`.
pub fn cmd_analyze(cfg: &RunConfig) -> Result<AnalyzeReport> {
    let spec = cfg.spec()?;
    let mut report = AnalyzeReport {
        preset: cfg.model.preset.to_string(),
        params: cfg
            .model
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        delta: spec.delta,
        equilibrium: None,
        hypotheses: None,
        turing: None,
        turing_error: None,
        invariant_rectangle: check_invariant_rectangle(&spec, 1024).ok(),
        bounds: None,
        bounds_error: None,
        global_verdict: None,
        status: "ok".into(),
        exit_code: EXIT_OK,
    };
    let eq = match find_equilibrium(&spec) {
        Ok(eq) => eq,
        Err(e) => {
            report.exit_code = exit_code(&e);
            report.status = e.to_string();
            return Ok(report);
        }
    };
    let hyp = check_hypotheses(&spec, eq.alpha, DEFAULT_HYPOTHESIS_GRID)?;
    report.global_verdict = Some(verdict_global(&spec, &eq, &hyp).as_str().into());

    let sc = &cfg.scenario;
    match classify_pde_stability(&spec, &eq, &SpectrumConfig::interval(sc.length, sc.modes)) {
        Ok(t) => report.turing = Some(t),
        Err(e) => {
            report.exit_code = exit_code(&e);
            report.status = e.to_string();
            report.turing_error = Some(e.to_string());
        }
    }
    let u0 = sc.u0.unwrap_or(eq.u_star);
    let v0 = sc.v0.unwrap_or(eq.v_star);
    match bounds_for(&spec, (u0, u0), (v0, v0)) {
        Ok(b) => report.bounds = Some(b),
        Err(e) => report.bounds_error = Some(e.to_string()),
    }
    report.equilibrium = Some(eq);
    report.hypotheses = Some(hyp);
    Ok(report)
}

/// Parses `min:max`, or a single number as a degenerate range.
pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let parse = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("bad range `{s}` (expected min:max)")))
    };
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let x = parse(s)?;
            (x, x)
        }
    };
    if !(lo <= hi) {
        return Err(Error::Config(format!("range `{s}` has min > max")));
    }
    Ok((lo, hi))
}

pub fn cmd_bounds(
    cfg: &RunConfig,
    u0: Option<(f64, f64)>,
    v0: Option<(f64, f64)>,
) -> Result<BoundsReport> {
    let spec = cfg.spec()?;
    let point = |x: Option<f64>, name: &str| {
        x.map(|x| (x, x)).ok_or_else(|| {
            Error::Config(format!(
                "no {name} range: pass --{name} min:max or set {name} in the config"
            ))
        })
    };
    let u0 = match u0 {
        Some(r) => r,
        None => point(cfg.scenario.u0, "u0")?,
    };
    let v0 = match v0 {
        Some(r) => r,
        None => point(cfg.scenario.v0, "v0")?,
    };
    bounds_for(&spec, u0, v0)
}

#[derive(Debug, Clone)]
pub struct SimulateResult {
    pub out_dir: PathBuf,
    pub manifest: RunManifest,
    pub trajectory: Trajectory,
}

pub fn cmd_simulate(cfg: &RunConfig, svg: bool) -> Result<SimulateResult> {
    let spec = cfg.spec()?;
    let (t_end, dt_out) = cfg.times()?;
    let init = cfg.initial_data()?;
    let out_dir = cfg
        .scenario
        .out
        .clone()
        .ok_or_else(|| Error::Config("no output directory: pass --out or set `out`".into()))?;

    let eq = find_equilibrium(&spec).ok();
    let opts = SimOptions {
        equilibrium: eq.as_ref().map(|e| (e.u_star, e.v_star)),
        ..SimOptions::default()
    };
    let mut traj = match cfg.scenario.mode {
        SimMode::Ode => integrate_ode_with(&spec, init.base(), t_end, dt_out, &opts)?,
        SimMode::Pde => integrate_pde_1d_with(&spec, &cfg.grid()?, &init, t_end, dt_out, &opts)?,
    };

    let mut warnings = traj.warnings.clone();
    let mut global_verdict = None;
    let mut turing_verdict = None;
    let mut monotone = None;
    if let Some(eq) = &eq {
        if let Ok(hyp) = check_hypotheses(&spec, eq.alpha, DEFAULT_HYPOTHESIS_GRID) {
            global_verdict = Some(verdict_global(&spec, eq, &hyp).as_str().to_string());
        }
        let sc = SpectrumConfig::interval(cfg.scenario.length, cfg.scenario.modes);
        if cfg.scenario.mode == SimMode::Pde {
            turing_verdict = classify_pde_stability(&spec, eq, &sc)
                .ok()
                .map(|t| t.verdict.as_str().to_string());
        }
        match attach_lyapunov(&spec, eq, &mut traj, &LyapunovConfig::default()) {
            Ok(()) => {
                monotone = check_monotone(&traj, MONOTONE_TOLERANCE)
                    .ok()
                    .map(|m| m.holds)
            }
            Err(e) => warnings.push(format!("Lyapunov functional not tracked: {e}")),
        }
    } else {
        warnings.push("no unique equilibrium; distances are NaN".into());
    }

    std::fs::create_dir_all(&out_dir)?;
    write_trajectory_csv(&out_dir.join(TRAJECTORY_FILE), &traj)?;
    write_diagnostics_csv(&out_dir.join(DIAGNOSTICS_FILE), &traj)?;
    let mut files = vec![TRAJECTORY_FILE.to_string(), DIAGNOSTICS_FILE.to_string()];
    if svg {
        std::fs::write(out_dir.join(PLOT_FILE), render_svg(&spec, &traj))?;
        files.push(PLOT_FILE.into());
    }
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config_sha256: cfg.hash(),
        config: cfg.to_text(),
        mode: match cfg.scenario.mode {
            SimMode::Ode => "ode".into(),
            SimMode::Pde => "pde".into(),
        },
        equilibrium: traj.equilibrium,
        global_verdict,
        turing_verdict,
        snapshots: traj.len(),
        final_distance: traj.final_distance(),
        converged: traj.converged(),
        lyapunov_monotone: monotone,
        files,
        warnings,
    };
    write_manifest(&out_dir.join(MANIFEST_FILE), &manifest)?;
    Ok(SimulateResult {
        out_dir,
        manifest,
        trajectory: traj,
    })
}

/// One row of the sweep summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: f64,
    pub d_crit: Option<f64>,
    pub verdict: String,
    pub con6: Option<bool>,
    pub global_verdict: String,
    pub final_dist: Option<f64>,
    pub converged: Option<bool>,
    pub status: String,
}

pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    let values = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Config(format!("sweep value `{x}` is not a finite number")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    Ok(values)
}

/// Analysis of every value of `axis`, plus a simulation per value when the
/// config sets `t_end`. Simulations run in parallel on at most `threads`
/// threads.
pub fn cmd_sweep(
    cfg: &RunConfig,
    axis: &str,
    values: &[f64],
    threads: Option<usize>,
) -> Result<Vec<SweepRow>> {
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    if cfg.model.get(axis).is_none() {
        return Err(Error::Config(format!(
            "`{axis}` is not a parameter of preset {} (expected one of {})",
            cfg.model.preset,
            cfg.model.preset.keys().join(", ")
        )));
    }
    let sc = &cfg.scenario;
    let mut rows = Vec::with_capacity(values.len());
    let mut specs = Vec::new();
    for &value in values {
        let mut row = SweepRow {
            parameter: axis.to_string(),
            value,
            d_crit: None,
            verdict: "NotApplicable".into(),
            con6: None,
            global_verdict: "Inconclusive".into(),
            final_dist: None,
            converged: None,
            status: "ok".into(),
        };
        let mut model = cfg.model.clone();
        let built = model.set(axis, value).and_then(|()| model.build());
        let spec = match built {
            Ok(spec) => spec,
            Err(e) => {
                row.status = e.to_string();
                rows.push(row);
                continue;
            }
        };
        match find_equilibrium(&spec) {
            Ok(eq) => {
                if let Ok(hyp) = check_hypotheses(&spec, eq.alpha, DEFAULT_HYPOTHESIS_GRID) {
                    row.con6 = Some(hyp.con6.holds);
                    row.global_verdict = verdict_global(&spec, &eq, &hyp).as_str().into();
                }
                match classify_pde_stability(
                    &spec,
                    &eq,
                    &SpectrumConfig::interval(sc.length, sc.modes),
                ) {
                    Ok(t) => {
                        row.verdict = t.verdict.as_str().into();
                        row.d_crit = t.d_crit;
                    }
                    Err(Error::Precondition(_)) => {}
                    Err(e) => row.status = e.to_string(),
                }
                specs.push((rows.len(), spec));
            }
            Err(e) => row.status = e.to_string(),
        }
        rows.push(row);
    }

    if sc.t_end.is_some() && !specs.is_empty() {
        let (t_end, dt_out) = cfg.times()?;
        let scenario = Scenario {
            mode: sc.mode,
            grid: cfg.grid()?,
            init: cfg.initial_data()?,
            t_end,
            dt_out,
            modes: sc.modes,
        };
        let only: Vec<ModelSpec> = specs.iter().map(|(_, s)| s.clone()).collect();
        for (summary, (row_idx, _)) in sweep_with_threads(&only, &scenario, threads)?
            .into_iter()
            .zip(&specs)
        {
            let row = &mut rows[*row_idx];
            match summary.error {
                Some(e) => row.status = e,
                None => {
                    row.final_dist = summary.final_distance;
                    row.converged = Some(summary.converged);
                }
            }
        }
    }
    Ok(rows)
}

fn opt_num(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

pub fn write_sweep_csv<W: std::io::Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record([
        "parameter",
        "value",
        "d_crit",
        "verdict",
        "con6",
        "global_verdict",
        "final_dist",
        "converged",
        "status",
    ])?;
    for r in rows {
        w.write_record([
            r.parameter.clone(),
            fmt_num(r.value),
            opt_num(r.d_crit),
            r.verdict.clone(),
            opt_bool(r.con6),
            r.global_verdict.clone(),
            opt_num(r.final_dist),
            opt_bool(r.converged),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r
        .deserialize()
        .collect::<std::result::Result<Vec<SweepRow>, _>>()?;
    Ok(rows)
}
