//! Batches of independent simulations.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{classify_pde_stability, find_equilibrium, SpectrumConfig, TuringVerdict};
use crate::error::{Error, Result};
use crate::model::ModelSpec;

use super::{integrate_ode_with, integrate_pde_1d_with, Grid1D, InitialData, SimOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    Ode,
    Pde,
}

/// Settings shared by every run of a sweep.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub mode: SimMode,
    pub grid: Grid1D,
    pub init: InitialData,
    pub t_end: f64,
    pub dt_out: f64,
    /// Spectrum truncation for the stability verdict.
    pub modes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub index: usize,
    pub final_distance: Option<f64>,
    pub max_growth: Option<f64>,
    pub converged: bool,
    pub d_crit: Option<f64>,
    pub verdict: Option<TuringVerdict>,
    /// Whether the simulation agrees with the verdict: stable verdicts
    /// should converge, an unstable one should not.
    pub consistent: Option<bool>,
    pub error: Option<String>,
}

/// Runs every spec under `scenario` in parallel. Failures of individual
/// runs are recorded in their summaries.
pub fn sweep(specs: &[ModelSpec], scenario: &Scenario) -> Result<Vec<SweepSummary>> {
    sweep_with_threads(specs, scenario, None)
}

/// As [`sweep`], with at most `threads` worker threads.
pub fn sweep_with_threads(
    specs: &[ModelSpec],
    scenario: &Scenario,
    threads: Option<usize>,
) -> Result<Vec<SweepSummary>> {
    if specs.is_empty() {
        return Err(Error::Domain("sweep needs at least one spec".into()));
    }
    let run = || {
        specs
            .par_iter()
            .enumerate()
            .map(|(index, spec)| summarize(index, spec, scenario))
            .collect::<Vec<_>>()
    };
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

fn summarize(index: usize, spec: &ModelSpec, scenario: &Scenario) -> SweepSummary {
    let mut summary = SweepSummary {
        index,
        final_distance: None,
        max_growth: None,
        converged: false,
        d_crit: None,
        verdict: None,
        consistent: None,
        error: None,
    };
    let eq = match find_equilibrium(spec) {
        Ok(eq) => eq,
        Err(e) => {
            summary.error = Some(e.to_string());
            return summary;
        }
    };
    if scenario.mode == SimMode::Pde {
        let cfg = SpectrumConfig::interval(scenario.grid.length, scenario.modes);
        if let Ok(rep) = classify_pde_stability(spec, &eq, &cfg) {
            summary.verdict = Some(rep.verdict);
            summary.d_crit = rep.d_crit;
        }
    }
    let opts = SimOptions {
        equilibrium: Some((eq.u_star, eq.v_star)),
        ..SimOptions::default()
    };
    let traj = match scenario.mode {
        SimMode::Ode => integrate_ode_with(
            spec,
            scenario.init.base(),
            scenario.t_end,
            scenario.dt_out,
            &opts,
        ),
        SimMode::Pde => integrate_pde_1d_with(
            spec,
            &scenario.grid,
            &scenario.init,
            scenario.t_end,
            scenario.dt_out,
            &opts,
        ),
    };
    match traj {
        Ok(traj) => {
            summary.final_distance = Some(traj.final_distance());
            summary.max_growth = Some(traj.max_growth());
            summary.converged = traj.converged();
            summary.consistent = summary.verdict.map(|v| v.is_stable() == summary.converged);
        }
        Err(e) => summary.error = Some(e.to_string()),
    }
    summary
}
