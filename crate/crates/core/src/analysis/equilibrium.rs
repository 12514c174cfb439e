use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::numerics::{self, interior_grid};

/// Samples used to bracket `f - λg` on `(0, δ)`.
const BRACKET_SCAN: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub alpha: f64,
    pub u_star: f64,
    pub v_star: f64,
    /// `[[F_u, F_v], [G_u, G_v]]` at `(u*, v*)`.
    pub jac: [[f64; 2]; 2],
    pub trace: f64,
    pub det: f64,
    pub ode_stable: bool,
    /// `F_u(u*, v*) = f'(α)φ(α) > 0`.
    pub activator_inhibitor: bool,
}

impl EquilibriumReport {
    /// `F0 = f'(α)φ(α)`.
    pub fn f0(&self) -> f64 {
        self.jac[0][0]
    }

    /// Stable activator-inhibitor kinetics: `0 < f'(α) < min(σ, λ g'(α))`.
    pub fn stable_activator_inhibitor(&self) -> bool {
        self.ode_stable && self.activator_inhibitor
    }
}

/// Locates `α` as the unique root of `f - λg` on `(0, δ)` and assembles the
/// Jacobian at `(α, g(α))` from the analytic derivatives.
pub fn find_equilibrium(spec: &ModelSpec) -> Result<EquilibriumReport> {
    let h = |u: f64| spec.f.eval(u) - spec.lambda * spec.g.eval(u);
    let brackets = numerics::sign_change_brackets(h, 0.0, spec.delta, BRACKET_SCAN)?;
    let (a, b) = match brackets.as_slice() {
        [] => {
            return Err(Error::Root(format!(
                "f - lambda*g has no sign change on (0, {})",
                spec.delta
            )))
        }
        [one] => *one,
        many => return Err(Error::MultiRoot { count: many.len() }),
    };
    let alpha = numerics::bisect(h, a, b, 1e-12)?;
    Ok(report_at(spec, alpha))
}

fn report_at(spec: &ModelSpec, alpha: f64) -> EquilibriumReport {
    let phi = spec.phi.eval(alpha);
    let df = spec.f.deriv(alpha);
    let dg = spec.g.deriv(alpha);
    let jac = [
        [df * phi, -spec.lambda * phi],
        [spec.sigma * dg * phi, -spec.sigma * phi],
    ];
    let trace = jac[0][0] + jac[1][1];
    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    EquilibriumReport {
        alpha,
        u_star: alpha,
        v_star: spec.g.eval(alpha),
        jac,
        trace,
        det,
        ode_stable: trace < 0.0 && det > 0.0,
        activator_inhibitor: jac[0][0] > 0.0,
    }
}

/// `f'(u) < σ` at every one of `grid_size` interior points of `(0, δ)`:
/// the divergence criterion that rules out periodic orbits of the kinetics.
pub fn check_global_ode(spec: &ModelSpec, grid_size: usize) -> Result<bool> {
    if grid_size < 64 {
        return Err(Error::Domain(format!(
            "grid_size must be at least 64, got {grid_size}"
        )));
    }
    for u in interior_grid(0.0, spec.delta, grid_size) {
        let d = spec.f.deriv(u);
        if !d.is_finite() {
            return Err(Error::NonFinite { what: "f'", at: u });
        }
        if d >= spec.sigma {
            return Ok(false);
        }
    }
    Ok(true)
}
