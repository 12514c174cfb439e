//! The Lyapunov functional
//!
//! ```text
//! V(t) = ∫ σ H(u) + (λ/2)(v - v*)² dx,   H(u) = ∫_α^u (g(r) - g(α)) dr
//! ```
//!
//! and the global stability verdicts that rest on it.

use serde::Serialize;

use crate::analysis::EquilibriumReport;
use crate::error::{Error, Result};
use crate::model::{HypothesisReport, ModelSpec};
use crate::numerics::{trapezoid, GaussLegendre};
use crate::sim::{Grid1D, Trajectory};

/// Values of `u` this far outside `(0, δ)` are treated as integrator noise
/// and clamped back in.
const CLAMP_MARGIN: f64 = 1e-10;

/// Absolute quadrature tolerance in units of the rounding error of
/// `g(r) - g(α)` integrated over `[α, u]`.
const NOISE_ULPS: f64 = 64.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovConfig {
    /// Gauss-Legendre nodes per panel of the `H` quadrature.
    pub quad_points: usize,
    pub rtol: f64,
}

impl Default for LyapunovConfig {
    fn default() -> Self {
        Self {
            quad_points: 64,
            rtol: 1e-10,
        }
    }
}

/// Evaluates `H`, the density `E` and `V` for one spec and equilibrium,
/// reusing a single quadrature rule.
#[derive(Debug, Clone)]
pub struct Lyapunov<'a> {
    spec: &'a ModelSpec,
    alpha: f64,
    g_alpha: f64,
    v_star: f64,
    rule: GaussLegendre,
    rtol: f64,
}

impl<'a> Lyapunov<'a> {
    pub fn new(spec: &'a ModelSpec, alpha: f64, cfg: &LyapunovConfig) -> Result<Self> {
        if cfg.quad_points < 8 {
            return Err(Error::Domain(format!(
                "quad_points must be at least 8, got {}",
                cfg.quad_points
            )));
        }
        if !(alpha > 0.0 && alpha < spec.delta) {
            return Err(Error::Domain(format!(
                "alpha = {alpha} is not in (0, {})",
                spec.delta
            )));
        }
        Ok(Self {
            spec,
            alpha,
            g_alpha: spec.g.eval(alpha),
            v_star: spec.g.eval(alpha),
            rule: GaussLegendre::new(cfg.quad_points),
            rtol: cfg.rtol,
        })
    }

    pub fn for_equilibrium(
        spec: &'a ModelSpec,
        eq: &EquilibriumReport,
        cfg: &LyapunovConfig,
    ) -> Result<Self> {
        Self::new(spec, eq.alpha, cfg)
    }

    fn clamp(&self, u: f64) -> Result<f64> {
        let delta = self.spec.delta;
        if u > 0.0 && u < delta {
            return Ok(u);
        }
        if u > -CLAMP_MARGIN && u <= 0.0 {
            return Ok(f64::MIN_POSITIVE.max(1e-300));
        }
        if u >= delta && u < delta + CLAMP_MARGIN {
            return Ok(delta * (1.0 - f64::EPSILON));
        }
        Err(Error::Domain(format!("u = {u} is outside (0, {delta})")))
    }

    /// `H(u) = ∫_α^u (g(r) - g(α)) dr` for `u ∈ (0, δ)`.
    pub fn h(&self, u: f64) -> Result<f64> {
        let u = self.clamp(u)?;
        if u == self.alpha {
            return Ok(0.0);
        }
        let g = &self.spec.g;
        let ga = self.g_alpha;
        let noise = NOISE_ULPS * f64::EPSILON * ga.abs().max(1.0) * (u - self.alpha).abs();
        Ok(self
            .rule
            .integrate_adaptive(|r| g.eval(r) - ga, self.alpha, u, self.rtol, noise))
    }

    /// `E(u, v) = σ H(u) + (λ/2)(v - v*)²`.
    pub fn density(&self, u: f64, v: f64) -> Result<f64> {
        let dv = v - self.v_star;
        Ok(self.spec.sigma * self.h(u)? + 0.5 * self.spec.lambda * dv * dv)
    }

    /// `V` for nodal fields on `grid`, by the trapezoid rule.
    pub fn functional(&self, u: &[f64], v: &[f64], grid: &Grid1D) -> Result<f64> {
        if u.len() != grid.n || v.len() != grid.n {
            return Err(Error::Domain(format!(
                "fields have {} / {} values, grid has {} nodes",
                u.len(),
                v.len(),
                grid.n
            )));
        }
        let density = u
            .iter()
            .zip(v)
            .map(|(&a, &b)| self.density(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(trapezoid(&density, grid.dx()))
    }
}

/// `H(u)` with the default quadrature settings.
pub fn eval_h(spec: &ModelSpec, alpha: f64, u: f64) -> Result<f64> {
    Lyapunov::new(spec, alpha, &LyapunovConfig::default())?.h(u)
}

/// `V` of one snapshot.
pub fn eval_v(
    spec: &ModelSpec,
    eq: &EquilibriumReport,
    u: &[f64],
    v: &[f64],
    grid: &Grid1D,
) -> Result<f64> {
    Lyapunov::for_equilibrium(spec, eq, &LyapunovConfig::default())?.functional(u, v, grid)
}

/// Fills the `V` diagnostic of every snapshot. ODE snapshots get the
/// density `E(u, v)` itself.
pub fn attach_lyapunov(
    spec: &ModelSpec,
    eq: &EquilibriumReport,
    traj: &mut Trajectory,
    cfg: &LyapunovConfig,
) -> Result<()> {
    let lyap = Lyapunov::for_equilibrium(spec, eq, cfg)?;
    for k in 0..traj.len() {
        let value = match &traj.grid {
            Some(grid) => lyap.functional(&traj.u[k], &traj.v[k], grid)?,
            None => lyap.density(traj.u[k][0], traj.v[k][0])?,
        };
        traj.diagnostics[k].lyapunov_v = Some(value);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub holds: bool,
    /// Largest `V(t_{k+1}) - V(t_k)` seen.
    pub worst_increase: f64,
    pub worst_index: Option<usize>,
    pub initial: f64,
    pub last: f64,
}

/// Checks `V(t_{k+1}) ≤ V(t_k) + rel_tol·V(0)` over a trajectory whose
/// `V` diagnostics have been filled in.
pub fn check_monotone(traj: &Trajectory, rel_tol: f64) -> Result<MonotonicityReport> {
    let values = traj
        .diagnostics
        .iter()
        .map(|d| d.lyapunov_v)
        .collect::<Option<Vec<f64>>>()
        .ok_or_else(|| Error::Domain("trajectory has no Lyapunov values attached".into()))?;
    let initial = *values
        .first()
        .ok_or_else(|| Error::Domain("empty trajectory".into()))?;
    let mut worst = (f64::NEG_INFINITY, None);
    for (k, w) in values.windows(2).enumerate() {
        let inc = w[1] - w[0];
        if inc > worst.0 {
            worst = (inc, Some(k + 1));
        }
    }
    Ok(MonotonicityReport {
        holds: worst.0 <= rel_tol * initial,
        worst_increase: worst.0,
        worst_index: worst.1,
        initial,
        last: *values.last().unwrap(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GlobalVerdict {
    /// Global stability of the kinetics alone (`f' < σ` on `(0, δ)`).
    #[serde(rename = "GlobalODE")]
    GlobalOde,
    /// Global stability of the PDE, from the Lyapunov functional.
    #[serde(rename = "GlobalPDE")]
    GlobalPde,
    Inconclusive,
}

impl GlobalVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            GlobalVerdict::GlobalOde => "GlobalODE",
            GlobalVerdict::GlobalPde => "GlobalPDE",
            GlobalVerdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Strongest global statement the sufficient conditions support:
/// `GlobalPDE` when `g' ≥ 0` and the `f(u) - f(α)` sign condition hold,
/// else `GlobalODE` when `f' < σ` on `(0, δ)`, else `Inconclusive`.
pub fn verdict_global(
    _spec: &ModelSpec,
    eq: &EquilibriumReport,
    hyp: &HypothesisReport,
) -> GlobalVerdict {
    if !eq.alpha.is_finite() {
        return GlobalVerdict::Inconclusive;
    }
    if hyp.con6.holds && hyp.con2.holds {
        GlobalVerdict::GlobalPde
    } else if hyp.theorem5.holds {
        GlobalVerdict::GlobalOde
    } else {
        GlobalVerdict::Inconclusive
    }
}
