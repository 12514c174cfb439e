//! Model definition: nonlinearities, parameters, presets and the
//! structural hypothesis checker.

mod config;
mod hypotheses;
mod presets;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub use config::{parse_key_values, ModelConfig, PresetKind};
pub use hypotheses::{check_hypotheses, ConditionCheck, HypothesisReport};
pub use presets::{preset_fitzhugh_nagumo, preset_lengyel_epstein};

/// Sample count used when a hypothesis is quantified over `(0, δ)`.
pub const DEFAULT_HYPOTHESIS_GRID: usize = 4096;

/// Relative offset used for one-sided limits at `u → 0⁺`.
pub const ZERO_LIMIT_OFFSET: f64 = 1e-8;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar nonlinearity together with its analytic derivative.
#[derive(Clone)]
pub struct ScalarFn {
    name: String,
    eval: RealFn,
    deriv: RealFn,
}

impl ScalarFn {
    pub fn new<F, D>(name: impl Into<String>, eval: F, deriv: D) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
        }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(format!("{value}"), move |_| value, |_| 0.0)
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        (self.eval)(u)
    }

    #[inline]
    pub fn deriv(&self, u: f64) -> f64 {
        (self.deriv)(u)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ScalarFn").field(&self.name).finish()
    }
}

/// Parameters of the built-in presets, kept for reporting and for
/// rebuilding a spec with one parameter changed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "preset", rename_all = "snake_case")]
pub enum Preset {
    LengyelEpstein {
        a: f64,
        mu: f64,
    },
    FitzhughNagumo {
        beta: f64,
        eps: f64,
        gamma: f64,
        stim: f64,
    },
}

/// The nonlinearities `f`, `g`, `φ` and constants of the system.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub f: ScalarFn,
    pub g: ScalarFn,
    pub phi: ScalarFn,
    pub d1: f64,
    pub d2: f64,
    pub lambda: f64,
    pub sigma: f64,
    /// Positive root of `f`; the hypotheses are stated on `(0, δ)`.
    pub delta: f64,
    pub preset: Option<Preset>,
}

impl ModelSpec {
    /// Builds a spec, checking positivity of the constants and that `δ`
    /// is a root of `f`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        f: ScalarFn,
        g: ScalarFn,
        phi: ScalarFn,
        d1: f64,
        d2: f64,
        lambda: f64,
        sigma: f64,
        delta: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("d1", d1),
            ("d2", d2),
            ("lambda", lambda),
            ("sigma", sigma),
            ("delta", delta),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Domain(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        let f_delta = f.eval(delta);
        let scale = f.eval(0.5 * delta).abs().max(1.0);
        if !f_delta.is_finite() || f_delta.abs() > 1e-9 * scale {
            return Err(Error::Domain(format!(
                "delta = {delta} is not a root of f (f(delta) = {f_delta})"
            )));
        }
        Ok(Self {
            f,
            g,
            phi,
            d1,
            d2,
            lambda,
            sigma,
            delta,
            preset: None,
        })
    }

    /// Reaction term of the `u` equation, `F(u, v) = (f(u) - λv) φ(u)`.
    #[inline]
    pub fn reaction_u(&self, u: f64, v: f64) -> f64 {
        (self.f.eval(u) - self.lambda * v) * self.phi.eval(u)
    }

    /// Reaction term of the `v` equation, `G(u, v) = σ (g(u) - v) φ(u)`.
    #[inline]
    pub fn reaction_v(&self, u: f64, v: f64) -> f64 {
        self.sigma * (self.g.eval(u) - v) * self.phi.eval(u)
    }

    /// Both reaction terms, sharing one evaluation of `φ`.
    #[inline]
    pub fn reaction(&self, u: f64, v: f64) -> (f64, f64) {
        let phi = self.phi.eval(u);
        (
            (self.f.eval(u) - self.lambda * v) * phi,
            self.sigma * (self.g.eval(u) - v) * phi,
        )
    }

    /// Jacobian `[[F_u, F_v], [G_u, G_v]]` of the reaction terms.
    pub fn jacobian(&self, u: f64, v: f64) -> [[f64; 2]; 2] {
        let phi = self.phi.eval(u);
        let dphi = self.phi.deriv(u);
        let f_u = self.f.deriv(u) * phi + (self.f.eval(u) - self.lambda * v) * dphi;
        let g_u = self.sigma * (self.g.deriv(u) * phi + (self.g.eval(u) - v) * dphi);
        [[f_u, -self.lambda * phi], [g_u, -self.sigma * phi]]
    }

    /// `u` used in place of `0` when a one-sided limit `u → 0⁺` is needed.
    pub fn zero_limit_point(&self) -> f64 {
        ZERO_LIMIT_OFFSET * self.delta
    }

    /// The invariant rectangle `(0, δ) × (0, g(δ))`.
    pub fn invariant_rectangle(&self) -> ((f64, f64), (f64, f64)) {
        ((0.0, self.delta), (0.0, self.g.eval(self.delta)))
    }

    /// Rebuilds a preset spec with the named parameter replaced. Works for
    /// the shared constants and for preset-specific parameters.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let mut cfg = ModelConfig::from_spec(self)?;
        cfg.set(name, value)?;
        cfg.build()
    }
}
