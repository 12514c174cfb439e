//! Time integration of the kinetics and of the 1-D PDE.

mod grid;
mod ode;
mod pde;
mod sweep;

use serde::Serialize;

pub use grid::{Grid1D, InitialData};
pub use ode::{integrate_ode, integrate_ode_with};
pub use pde::{integrate_pde_1d, integrate_pde_1d_with, pde_time_step};
pub use sweep::{sweep, sweep_with_threads, Scenario, SimMode, SweepSummary};

use crate::analysis::find_equilibrium;
use crate::model::ModelSpec;

/// Sup-norm distance to the equilibrium below which a snapshot counts as
/// converged.
pub const CONVERGENCE_DISTANCE: f64 = 1e-2;
/// Consecutive converged snapshots required to declare convergence.
pub const CONVERGENCE_RUN: usize = 10;
/// Excess outside the closed invariant rectangle tolerated before a
/// snapshot is flagged.
pub const RECTANGLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct SimOptions {
    /// Switches the reaction terms off, leaving pure diffusion.
    pub reaction: bool,
    /// Reference state for the distance diagnostic; located with
    /// [`find_equilibrium`] when `None`.
    pub equilibrium: Option<(f64, f64)>,
    pub ode_rtol: f64,
    pub ode_atol: f64,
    /// Upper bound on the PDE time step, on top of the stability limits.
    pub dt_max: Option<f64>,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            reaction: true,
            equilibrium: None,
            ode_rtol: 1e-8,
            ode_atol: 1e-10,
            dt_max: None,
        }
    }
}

impl SimOptions {
    fn reference(&self, spec: &ModelSpec) -> Option<(f64, f64)> {
        self.equilibrium
            .or_else(|| find_equilibrium(spec).ok().map(|eq| (eq.u_star, eq.v_star)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    /// `max_x max(|u - u*|, |v - v*|)`, NaN without a reference state.
    pub dist_sup: f64,
    /// Largest distance of any node outside `[0, δ] × [0, g(δ)]`.
    pub rect_excess: f64,
    /// Filled in by [`crate::lyapunov::attach_lyapunov`].
    pub lyapunov_v: Option<f64>,
}

impl Diagnostics {
    pub fn rectangle_violation(&self) -> bool {
        self.rect_excess > RECTANGLE_TOLERANCE
    }
}

/// Snapshots of a run. ODE runs store one-element fields.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grid: Option<Grid1D>,
    pub times: Vec<f64>,
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    pub diagnostics: Vec<Diagnostics>,
    pub equilibrium: Option<(f64, f64)>,
    pub warnings: Vec<String>,
}

impl Trajectory {
    fn new(grid: Option<Grid1D>, equilibrium: Option<(f64, f64)>) -> Self {
        Self {
            grid,
            times: Vec::new(),
            u: Vec::new(),
            v: Vec::new(),
            diagnostics: Vec::new(),
            equilibrium,
            warnings: Vec::new(),
        }
    }

    fn push(&mut self, spec: &ModelSpec, t: f64, u: &[f64], v: &[f64]) {
        let dist_sup = match self.equilibrium {
            Some((us, vs)) => u
                .iter()
                .zip(v)
                .map(|(a, b)| (a - us).abs().max((b - vs).abs()))
                .fold(0.0, f64::max),
            None => f64::NAN,
        };
        let v_top = spec.g.eval(spec.delta);
        let rect_excess = u
            .iter()
            .zip(v)
            .map(|(&a, &b)| (-a).max(a - spec.delta).max(-b).max(b - v_top).max(0.0))
            .fold(0.0, f64::max);
        self.times.push(t);
        self.u.push(u.to_vec());
        self.v.push(v.to_vec());
        self.diagnostics.push(Diagnostics {
            dist_sup,
            rect_excess,
            lyapunov_v: None,
        });
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_distance(&self) -> f64 {
        self.diagnostics.last().map_or(f64::NAN, |d| d.dist_sup)
    }

    /// Distance below [`CONVERGENCE_DISTANCE`] for the last
    /// [`CONVERGENCE_RUN`] snapshots (or all of them, if fewer).
    pub fn converged(&self) -> bool {
        let n = self.diagnostics.len();
        n > 0
            && self.diagnostics[n.saturating_sub(CONVERGENCE_RUN)..]
                .iter()
                .all(|d| d.dist_sup < CONVERGENCE_DISTANCE)
    }

    pub fn max_rect_excess(&self) -> f64 {
        self.diagnostics
            .iter()
            .map(|d| d.rect_excess)
            .fold(0.0, f64::max)
    }

    /// Largest ratio of the distance to equilibrium over its initial value.
    pub fn max_growth(&self) -> f64 {
        let d0 = self.diagnostics.first().map_or(f64::NAN, |d| d.dist_sup);
        self.diagnostics
            .iter()
            .map(|d| d.dist_sup / d0)
            .fold(f64::NAN, f64::max)
    }
}
