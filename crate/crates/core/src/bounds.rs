//! Invariant rectangle of the kinetics and a-priori bounds for solutions,
//! built from the decompositions `f(u)φ(u) = K - uΨ(u)` and
//! `g(u)φ(u) = uΦ(u)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ModelSpec, Preset, ScalarFn};
use crate::numerics::{interior_grid, scan_max, scan_min};

/// Default sample count for the extremum scans of `Ψ` and `Φ`.
pub const DEFAULT_SCAN_POINTS: usize = 100_000;

/// `fφ = K - uΨ(u)` and `gφ = uΦ(u)`, with the extrema of `Ψ` and `Φ` over
/// `scan_range`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub k: f64,
    pub psi: ScalarFn,
    pub phi_fn: ScalarFn,
    pub psi_min: f64,
    pub psi_max: f64,
    pub phi_min: f64,
    pub phi_max: f64,
    pub scan_range: (f64, f64),
}

impl Decomposition {
    /// Computes the extrema of `psi` and `phi_fn` on `(0, scan_hi]` with a
    /// dense scan of `n` points plus golden-section refinement.
    pub fn new(k: f64, psi: ScalarFn, phi_fn: ScalarFn, scan_hi: f64, n: usize) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain(format!("K must be positive, got {k}")));
        }
        if !(scan_hi > 0.0 && scan_hi.is_finite()) {
            return Err(Error::Domain(format!(
                "scan range end must be positive, got {scan_hi}"
            )));
        }
        let lo = scan_hi / n as f64;
        let (_, psi_min) = scan_min(|u| psi.eval(u), lo, scan_hi, n);
        let (_, psi_max) = scan_max(|u| psi.eval(u), lo, scan_hi, n);
        let (_, phi_min) = scan_min(|u| phi_fn.eval(u), lo, scan_hi, n);
        let (_, phi_max) = scan_max(|u| phi_fn.eval(u), lo, scan_hi, n);
        for (name, v) in [
            ("psi_min", psi_min),
            ("psi_max", psi_max),
            ("phi_min", phi_min),
            ("phi_max", phi_max),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    what: name,
                    at: scan_hi,
                });
            }
        }
        Ok(Self {
            k,
            psi,
            phi_fn,
            psi_min,
            psi_max,
            phi_min,
            phi_max,
            scan_range: (0.0, scan_hi),
        })
    }

    /// Closed-form decomposition of a preset: Lengyel-Epstein has `K = a`,
    /// `Ψ ≡ μ`, `Φ ≡ 1`; FitzHugh-Nagumo has `K = I`,
    /// `Ψ(u) = u² - (1+β)u + β`, `Φ ≡ 1/γ`.
    pub fn for_preset(spec: &ModelSpec, scan_hi: f64, n: usize) -> Result<Self> {
        match spec.preset {
            Some(Preset::LengyelEpstein { a, mu }) => Self::new(
                a,
                ScalarFn::constant(mu),
                ScalarFn::constant(1.0),
                scan_hi,
                n,
            ),
            Some(Preset::FitzhughNagumo {
                beta, gamma, stim, ..
            }) => Self::new(
                stim,
                ScalarFn::new(
                    "u^2 - (1+beta)u + beta",
                    move |u| u * u - (1.0 + beta) * u + beta,
                    move |u| 2.0 * u - (1.0 + beta),
                ),
                ScalarFn::constant(1.0 / gamma),
                scan_hi,
                n,
            ),
            None => Err(Error::Domain(
                "no closed-form decomposition for a custom spec; use Decomposition::from_spec"
                    .into(),
            )),
        }
    }

    /// Decomposition of an arbitrary spec for a given `K`:
    /// `Ψ(u) = (K - f(u)φ(u))/u` and `Φ(u) = g(u)φ(u)/u`.
    pub fn from_spec(spec: &ModelSpec, k: f64, scan_hi: f64, n: usize) -> Result<Self> {
        let (f, phi) = (spec.f.clone(), spec.phi.clone());
        let (f2, phi2) = (spec.f.clone(), spec.phi.clone());
        let psi = ScalarFn::new(
            "(K - f phi)/u",
            move |u| (k - f.eval(u) * phi.eval(u)) / u,
            move |u| {
                let fp = f2.eval(u) * phi2.eval(u);
                let dfp = f2.deriv(u) * phi2.eval(u) + f2.eval(u) * phi2.deriv(u);
                (-dfp * u - (k - fp)) / (u * u)
            },
        );
        let (g, phi) = (spec.g.clone(), spec.phi.clone());
        let (g2, phi2) = (spec.g.clone(), spec.phi.clone());
        let phi_fn = ScalarFn::new(
            "g phi/u",
            move |u| g.eval(u) * phi.eval(u) / u,
            move |u| {
                let gp = g2.eval(u) * phi2.eval(u);
                let dgp = g2.deriv(u) * phi2.eval(u) + g2.eval(u) * phi2.deriv(u);
                (dgp * u - gp) / (u * u)
            },
        );
        Self::new(k, psi, phi_fn, scan_hi, n)
    }

    /// `Ψ > 0` and `Φ > 0` over the scan range.
    pub fn is_positive(&self) -> bool {
        self.psi_min > 0.0 && self.phi_min > 0.0
    }

    /// Largest relative residual of `fφ = K - uΨ` and `gφ = uΦ` over
    /// `samples` interior points of the scan range.
    pub fn max_residual(&self, spec: &ModelSpec, samples: usize) -> f64 {
        let (lo, hi) = self.scan_range;
        interior_grid(lo, hi, samples)
            .map(|u| {
                let phi = spec.phi.eval(u);
                let fphi = spec.f.eval(u) * phi;
                let gphi = spec.g.eval(u) * phi;
                let r1 = (fphi - (self.k - u * self.psi.eval(u))).abs() / fphi.abs().max(1.0);
                let r2 = (gphi - u * self.phi_fn.eval(u)).abs() / gphi.abs().max(1.0);
                r1.max(r2)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Edge {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeViolation {
    pub edge: Edge,
    pub u: f64,
    pub v: f64,
    /// `F` on the vertical edges, `G` on the horizontal ones.
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectangleCheck {
    pub holds: bool,
    pub witness: Option<EdgeViolation>,
}

/// Checks that `(F, G)` points into `(0, δ) × (0, g(δ))` on each edge,
/// sampling `n_samples` interior points per edge. The left edge is taken
/// at `u = 1e-8·δ`.
pub fn check_invariant_rectangle(spec: &ModelSpec, n_samples: usize) -> Result<RectangleCheck> {
    if n_samples < 16 {
        return Err(Error::Domain(format!(
            "n_samples must be at least 16, got {n_samples}"
        )));
    }
    let delta = spec.delta;
    let v_top = spec.g.eval(delta);
    let u_left = spec.zero_limit_point();

    // (edge, u, v, value, sign) with sign = +1 when the value must be ≥ 0
    let mut samples = Vec::with_capacity(4 * n_samples);
    for v in interior_grid(0.0, v_top, n_samples) {
        samples.push((Edge::Left, u_left, v, spec.reaction_u(u_left, v), 1.0));
        samples.push((Edge::Right, delta, v, spec.reaction_u(delta, v), -1.0));
    }
    for u in interior_grid(0.0, delta, n_samples) {
        samples.push((Edge::Bottom, u, 0.0, spec.reaction_v(u, 0.0), 1.0));
        samples.push((Edge::Top, u, v_top, spec.reaction_v(u, v_top), -1.0));
    }
    let scale = samples
        .iter()
        .map(|s| s.3.abs())
        .filter(|x| x.is_finite())
        .fold(1.0, f64::max);
    let tol = 1e-10 * scale;

    let mut worst: Option<(f64, EdgeViolation)> = None;
    for (edge, u, v, value, sign) in samples {
        if !value.is_finite() {
            return Err(Error::NonFinite {
                what: "reaction term",
                at: u,
            });
        }
        let slack = sign * value;
        if slack < -tol && worst.is_none_or(|(w, _)| slack < w) {
            worst = Some((slack, EdgeViolation { edge, u, v, value }));
        }
    }
    Ok(RectangleCheck {
        holds: worst.is_none(),
        witness: worst.map(|(_, w)| w),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    /// `((0, δ), (0, g(δ)))`.
    pub rect_delta: ((f64, f64), (f64, f64)),
    pub u1: f64,
    pub u2: f64,
    pub v1: f64,
    pub v2: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    /// `min(u2, v2)`, as the bound is literally stated.
    #[serde(rename = "C2")]
    pub c2: f64,
    /// `max(u2, v2)`, the upper end of a box containing the trapping
    /// rectangle.
    #[serde(rename = "C2_box")]
    pub c2_box: f64,
    pub phi_prime_0: f64,
    /// `Ψ, Φ > 0` over the scan range; the bounds rely on it.
    pub valid: bool,
}

impl BoundsReport {
    /// Whether `(u, v)` lies in `[u1, u2] × [v1, v2]` up to `tol`.
    pub fn contains(&self, u: f64, v: f64, tol: f64) -> bool {
        u >= self.u1 - tol && u <= self.u2 + tol && v >= self.v1 - tol && v <= self.v2 + tol
    }
}

/// The trapping rectangle `[u1, u2] × [v1, v2]` and bounds `C1`, `C2`
/// for initial data with ranges `u0_range` and `v0_range`:
///
/// ```text
/// u2 = max(K/Ψ_max, max u0)
/// v2 = max(u2 Φ_max / φ(u2), max v0)
/// u1 = min(K / (Ψ_min + λ v2 φ'(0)), min u0)
/// v1 = min(Φ_min / φ'(0), min v0)
/// ```
pub fn compute_bounds(
    spec: &ModelSpec,
    dec: &Decomposition,
    u0_range: (f64, f64),
    v0_range: (f64, f64),
) -> Result<BoundsReport> {
    for (name, (lo, hi)) in [("u0", u0_range), ("v0", v0_range)] {
        if !(lo <= hi && lo.is_finite() && hi.is_finite()) {
            return Err(Error::Domain(format!(
                "{name} range [{lo}, {hi}] is not valid"
            )));
        }
    }
    let phi_prime_0 = spec.phi.deriv(0.0);
    if !(phi_prime_0 > 0.0) {
        return Err(Error::Domain(format!(
            "phi'(0) must be positive for the bounds, got {phi_prime_0}"
        )));
    }
    check_sublinear(spec, dec.scan_range.1, phi_prime_0)?;

    let lambda = spec.lambda;
    let u2 = (dec.k / dec.psi_max).max(u0_range.1);
    let v2 = (u2 / spec.phi.eval(u2) * dec.phi_max).max(v0_range.1);
    let u1 = (dec.k / (dec.psi_min + lambda * v2 * phi_prime_0)).min(u0_range.0);
    let v1 = (dec.phi_min / phi_prime_0).min(v0_range.0);

    Ok(BoundsReport {
        rect_delta: spec.invariant_rectangle(),
        u1,
        u2,
        v1,
        v2,
        c1: u1.min(v1),
        c2: u2.min(v2),
        c2_box: u2.max(v2),
        phi_prime_0,
        valid: dec.is_positive(),
    })
}

/// `s ↦ φ(s)/s` non-increasing and `0 < φ(s)/s ≤ φ'(0)` on a grid of
/// `(0, hi]`.
fn check_sublinear(spec: &ModelSpec, hi: f64, phi_prime_0: f64) -> Result<()> {
    let n = 4096;
    let mut prev: Option<f64> = None;
    for s in interior_grid(0.0, hi, n).chain(std::iter::once(hi)) {
        let r = spec.phi.eval(s) / s;
        if !(r > 0.0) || r > phi_prime_0 * (1.0 + 1e-12) {
            return Err(Error::Sublinearity { at: s });
        }
        if let Some(p) = prev {
            if r > p * (1.0 + 1e-12) {
                return Err(Error::Sublinearity { at: s });
            }
        }
        prev = Some(r);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::find_equilibrium;
    use crate::model::{preset_fitzhugh_nagumo, preset_lengyel_epstein};

    fn le_reference() -> ModelSpec {
        preset_lengyel_epstein((125.0f64 / 4.0).sqrt(), 1.0, 4.0, 0.5, 1.0, 0.5).unwrap()
    }

    fn fhn() -> ModelSpec {
        preset_fitzhugh_nagumo(0.139, 0.008, 2.54, 2.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn invariant_rectangle_for_presets() {
        assert!(
            check_invariant_rectangle(&le_reference(), 256)
                .unwrap()
                .holds
        );
        assert!(check_invariant_rectangle(&fhn(), 256).unwrap().holds);
    }

    #[test]
    fn invariant_rectangle_left_edge_violation() {
        // φ(0) = 1 > 0 and λ g(δ) = 3 > f(0⁺) = 1
        let spec = ModelSpec::new(
            ScalarFn::new("1-u", |u| 1.0 - u, |_| -1.0),
            ScalarFn::new("2+u", |u| 2.0 + u, |_| 1.0),
            ScalarFn::constant(1.0),
            1.0,
            1.0,
            1.0,
            1.0,
            1.0,
        )
        .unwrap();
        let check = check_invariant_rectangle(&spec, 64).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness.unwrap().edge, Edge::Left);
    }

    #[test]
    fn decomposition_round_trip() {
        let spec = le_reference();
        let dec = Decomposition::for_preset(&spec, spec.delta, 1000).unwrap();
        assert!(dec.max_residual(&spec, 512) < 1e-9);
        let spec = fhn();
        let dec = Decomposition::for_preset(&spec, spec.delta, 1000).unwrap();
        assert!(dec.max_residual(&spec, 512) < 1e-9);
        // Ψ = (u - 1)(u - β) dips below zero on (β, 1)
        assert!(!dec.is_positive());
        assert!((dec.psi_min - (-(1.0f64 - 0.139).powi(2) / 4.0)).abs() < 1e-9);
    }

    #[test]
    fn numeric_decomposition_matches_closed_form() {
        let spec = le_reference();
        let a = (125.0f64 / 4.0).sqrt();
        let closed = Decomposition::for_preset(&spec, spec.delta, 2000).unwrap();
        let numeric = Decomposition::from_spec(&spec, a, spec.delta, 2000).unwrap();
        assert!(numeric.max_residual(&spec, 512) < 1e-9);
        assert!((closed.psi_min - numeric.psi_min).abs() < 1e-9);
        assert!((closed.phi_max - numeric.phi_max).abs() < 1e-9);
    }

    #[test]
    fn equilibrium_start_lies_within_bounds() {
        let spec = le_reference();
        let eq = find_equilibrium(&spec).unwrap();
        let dec = Decomposition::for_preset(&spec, spec.delta, 10_000).unwrap();
        let b =
            compute_bounds(&spec, &dec, (eq.u_star, eq.u_star), (eq.v_star, eq.v_star)).unwrap();
        for x in [eq.u_star, eq.v_star] {
            assert!(b.c1 <= x && x <= b.c2_box);
            assert!(b.c1 <= x && x <= b.c2);
        }
        assert!(b.u1 <= b.u2 && b.v1 <= b.v2 && b.c1 > 0.0);
    }

    #[test]
    fn bounds_enclose_initial_range() {
        let spec = le_reference();
        let dec = Decomposition::for_preset(&spec, 6.0, 10_000).unwrap();
        let b = compute_bounds(&spec, &dec, (0.5, 6.0), (0.2, 40.0)).unwrap();
        assert!(b.u1 <= 0.5 && b.u2 >= 6.0);
        assert!(b.v1 <= 0.2 && b.v2 >= 40.0);
        assert!(b.valid);
    }

    #[test]
    fn fitzhugh_nagumo_has_no_linear_bound_on_phi() {
        let spec = fhn();
        let dec = Decomposition::for_preset(&spec, spec.delta, 1000).unwrap();
        assert!(matches!(
            compute_bounds(&spec, &dec, (0.3, 0.7), (1.0, 1.4)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn superlinear_phi_is_rejected() {
        // φ(u) = u + u², φ(u)/u = 1 + u increases
        let spec = ModelSpec::new(
            ScalarFn::new(
                "(1-u)/(u+u^2)",
                |u| (1.0 - u) / (u + u * u),
                |u| {
                    let d = u + u * u;
                    (-d - (1.0 - u) * (1.0 + 2.0 * u)) / (d * d)
                },
            ),
            ScalarFn::new("1", |_| 1.0, |_| 0.0),
            ScalarFn::new("u+u^2", |u| u + u * u, |u| 1.0 + 2.0 * u),
            1.0,
            1.0,
            1.0,
            1.0,
            1.0,
        )
        .unwrap();
        let dec = Decomposition::from_spec(&spec, 1.0, 1.0, 1000).unwrap();
        assert!(matches!(
            compute_bounds(&spec, &dec, (0.1, 0.9), (0.5, 1.0)),
            Err(Error::Sublinearity { .. })
        ));
    }
}
