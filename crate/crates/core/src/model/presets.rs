use crate::error::{Error, Result};
use crate::numerics;

use super::{ModelSpec, Preset, ScalarFn};

/// Lengyel-Epstein (CIMA) kinetics with `φ(u) = u/(1+u²)`:
/// `f(u) = (a - μu)(1+u²)/u`, `g(u) = 1+u²`, `δ = a/μ`.
///
/// The classical two-parameter form with constants `b`, `c` is obtained
/// with `sigma = σ·b` and `d2 = σ·c`.
pub fn preset_lengyel_epstein(
    a: f64,
    mu: f64,
    lambda: f64,
    sigma: f64,
    d1: f64,
    d2: f64,
) -> Result<ModelSpec> {
    if !(a > 0.0 && a.is_finite()) || !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!(
            "Lengyel-Epstein needs a > 0 and mu > 0 (got a = {a}, mu = {mu})"
        )));
    }
    // (a - μu)(1/u + u) expanded
    let f = ScalarFn::new(
        "(a - mu u)(1 + u^2)/u",
        move |u| a / u + a * u - mu - mu * u * u,
        move |u| -a / (u * u) + a - 2.0 * mu * u,
    );
    let g = ScalarFn::new("1 + u^2", |u| 1.0 + u * u, |u| 2.0 * u);
    let phi = ScalarFn::new(
        "u/(1 + u^2)",
        |u| u / (1.0 + u * u),
        |u| {
            let s = 1.0 + u * u;
            (1.0 - u * u) / (s * s)
        },
    );
    let mut spec = ModelSpec::new(f, g, phi, d1, d2, lambda, sigma, a / mu)?;
    spec.preset = Some(Preset::LengyelEpstein { a, mu });
    Ok(spec)
}

/// FitzHugh-Nagumo kinetics `u_t = d1 Δu - u³ + (1+β)u² - βu - v + I`,
/// `v_t = d2 Δv + εu - εγv`, written with `g(u) = u/γ`, `φ ≡ 1`, `λ = 1`
/// and `σ = εγ`. `δ` is the first positive root of the cubic.
pub fn preset_fitzhugh_nagumo(
    beta: f64,
    eps: f64,
    gamma: f64,
    stim: f64,
    d1: f64,
    d2: f64,
) -> Result<ModelSpec> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!(
            "FitzHugh-Nagumo needs 0 < beta < 1, got {beta}"
        )));
    }
    if !(eps > 0.0 && eps.is_finite()) || !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!(
            "FitzHugh-Nagumo needs eps > 0 and gamma > 0 (got {eps}, {gamma})"
        )));
    }
    let cubic = move |u: f64| -u * u * u + (1.0 + beta) * u * u - beta * u + stim;
    let delta = first_positive_root(cubic)?;
    let f = ScalarFn::new("-u^3 + (1+beta)u^2 - beta u + I", cubic, move |u| {
        -3.0 * u * u + 2.0 * (1.0 + beta) * u - beta
    });
    let g = ScalarFn::new("u/gamma", move |u| u / gamma, move |_| 1.0 / gamma);
    let phi = ScalarFn::constant(1.0);
    let mut spec = ModelSpec::new(f, g, phi, d1, d2, 1.0, eps * gamma, delta)?;
    spec.preset = Some(Preset::FitzhughNagumo {
        beta,
        eps,
        gamma,
        stim,
    });
    Ok(spec)
}

/// First root of `f` on `(0, ∞)`, assuming `f > 0` just right of zero.
/// The upper end is doubled until `f` turns negative, then the first
/// sign change on the bracket is bisected.
fn first_positive_root<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    let lo = 1e-9;
    if !(f(lo) > 0.0) {
        return Err(Error::Root(format!(
            "f must be positive near 0 to define delta (f({lo}) = {})",
            f(lo)
        )));
    }
    let mut hi = 1.0;
    while f(hi) >= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Root("f has no positive root below 1e12".into()));
        }
    }
    let brackets = numerics::sign_change_brackets(&f, lo, hi, 4096)?;
    let &(a, b) = brackets
        .first()
        .ok_or_else(|| Error::Root("no sign change of f on (0, u_hi)".into()))?;
    numerics::bisect(&f, a, b, 1e-14)
}
