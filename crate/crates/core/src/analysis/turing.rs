use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelSpec;

use super::equilibrium::EquilibriumReport;
use super::spectrum::{neumann_eigenvalues, SpectrumConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TuringVerdict {
    /// `d1 λ_1 ≥ F0`: no mode can be destabilised by diffusion.
    StableCase1,
    /// `d2/σ` below the critical ratio.
    StableCase2,
    /// `d2/σ` above the critical ratio; some `Q_k < 0`.
    Unstable,
}

impl TuringVerdict {
    pub fn is_stable(self) -> bool {
        !matches!(self, TuringVerdict::Unstable)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TuringVerdict::StableCase1 => "StableCase1",
            TuringVerdict::StableCase2 => "StableCase2",
            TuringVerdict::Unstable => "Unstable",
        }
    }
}

/// Characteristic polynomial `ξ² + p ξ + Q` of the linearisation restricted
/// to one Neumann mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeDiagnostics {
    pub index: usize,
    pub eigenvalue: f64,
    pub p: f64,
    #[serde(rename = "Q")]
    pub q: f64,
}

impl ModeDiagnostics {
    /// Largest real part among the roots of `ξ² + p ξ + Q`.
    pub fn leading_growth_rate(&self) -> f64 {
        let disc = self.p * self.p - 4.0 * self.q;
        if disc >= 0.0 {
            0.5 * (-self.p + disc.sqrt())
        } else {
            -0.5 * self.p
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalRatio {
    pub index: usize,
    pub eigenvalue: f64,
    pub d_tilde: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuringReport {
    #[serde(rename = "F0")]
    pub f0: f64,
    pub i_alpha: Option<usize>,
    pub d_tilde: Vec<CriticalRatio>,
    pub d_crit: Option<f64>,
    /// `d2 / σ`.
    pub ratio: f64,
    pub verdict: TuringVerdict,
    /// Set when `d2/σ` equals the critical ratio exactly (reported stable).
    pub boundary: bool,
    pub witness_mode: Option<usize>,
    #[serde(rename = "Q")]
    pub modes: Vec<ModeDiagnostics>,
}

/// Mode-`i` polynomial coefficients for an arbitrary ratio `d2/σ`.
///
/// `p = (d1 + d2) λ_i + (σ - f'(α)) φ(α)` and
/// `Q = σ [ r λ_i (λ_i d1 - F0) + φ(α) (λ_i d1 + φ(α)(λ g'(α) - f'(α))) ]`
/// with `r = d2/σ`.
pub fn mode_coefficients(spec: &ModelSpec, alpha: f64, eigenvalue: f64, ratio: f64) -> (f64, f64) {
    let phi = spec.phi.eval(alpha);
    let df = spec.f.deriv(alpha);
    let dg = spec.g.deriv(alpha);
    let f0 = df * phi;
    let d2 = ratio * spec.sigma;
    let p = (spec.d1 + d2) * eigenvalue + (spec.sigma - df) * phi;
    let q = spec.sigma
        * (ratio * eigenvalue * (eigenvalue * spec.d1 - f0)
            + phi * (eigenvalue * spec.d1 + phi * (spec.lambda * dg - df)));
    (p, q)
}

/// Classifies the constant steady state of the PDE for the spectrum of
/// `cfg`. Requires stable activator-inhibitor kinetics,
/// `0 < f'(α) < min(σ, λ g'(α))`.
///
/// The critical ratio is the minimum of `d̃_i` over every mode with
/// `d1 λ_i < F0`, including the last such mode.
pub fn classify_pde_stability(
    spec: &ModelSpec,
    eq: &EquilibriumReport,
    cfg: &SpectrumConfig,
) -> Result<TuringReport> {
    let alpha = eq.alpha;
    let df = spec.f.deriv(alpha);
    let bound = spec.sigma.min(spec.lambda * spec.g.deriv(alpha));
    if !(df > 0.0 && df < bound) {
        return Err(Error::Precondition(format!(
            "kinetics are not a stable activator-inhibitor system: \
             need 0 < f'(alpha) < min(sigma, lambda g'(alpha)), got f'(alpha) = {df}, bound = {bound}"
        )));
    }

    let eigenvalues = neumann_eigenvalues(cfg)?;
    let phi = spec.phi.eval(alpha);
    let f0 = df * phi;
    let ratio = spec.d2 / spec.sigma;
    let d1 = spec.d1;
    let det_term = phi * (spec.lambda * spec.g.deriv(alpha) - df);

    let modes_up_to = |last: usize| -> Vec<ModeDiagnostics> {
        eigenvalues[..=last.min(cfg.max_modes)]
            .iter()
            .enumerate()
            .map(|(index, &eigenvalue)| {
                let (p, q) = mode_coefficients(spec, alpha, eigenvalue, ratio);
                ModeDiagnostics {
                    index,
                    eigenvalue,
                    p,
                    q,
                }
            })
            .collect()
    };

    if d1 * eigenvalues[1] >= f0 {
        return Ok(TuringReport {
            f0,
            i_alpha: None,
            d_tilde: Vec::new(),
            d_crit: None,
            ratio,
            verdict: TuringVerdict::StableCase1,
            boundary: false,
            witness_mode: None,
            modes: modes_up_to(4),
        });
    }

    let last = eigenvalues[cfg.max_modes];
    if d1 * last < f0 {
        return Err(Error::Truncation {
            max_modes: cfg.max_modes,
            reached: d1 * last,
            f0,
        });
    }
    let i_alpha = eigenvalues
        .iter()
        .skip(1)
        .take_while(|&&l| d1 * l < f0)
        .count();

    let d_tilde: Vec<CriticalRatio> = (1..=i_alpha)
        .map(|i| {
            let l = eigenvalues[i];
            CriticalRatio {
                index: i,
                eigenvalue: l,
                d_tilde: phi * (l * d1 + det_term) / (l * (f0 - l * d1)),
            }
        })
        .collect();
    let critical = d_tilde
        .iter()
        .min_by(|a, b| a.d_tilde.total_cmp(&b.d_tilde))
        .copied()
        .expect("i_alpha >= 1");
    let d_crit = critical.d_tilde;

    let (verdict, boundary, witness_mode) = if ratio > d_crit {
        (TuringVerdict::Unstable, false, Some(critical.index))
    } else {
        (TuringVerdict::StableCase2, ratio == d_crit, None)
    };

    Ok(TuringReport {
        f0,
        i_alpha: Some(i_alpha),
        d_tilde,
        d_crit: Some(d_crit),
        ratio,
        verdict,
        boundary,
        witness_mode,
        modes: modes_up_to(i_alpha + 4),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::find_equilibrium;
    use crate::model::preset_lengyel_epstein;

    /// Lengyel-Epstein with α = 3: f'(α) = 22/3, φ(α) = 0.3, λ g'(α) = 24.
    fn turing_le(d2: f64, length: f64) -> (ModelSpec, EquilibriumReport, SpectrumConfig) {
        let spec = preset_lengyel_epstein(15.0, 1.0, 4.0, 8.0, 1.0, d2).unwrap();
        let eq = find_equilibrium(&spec).unwrap();
        (spec, eq, SpectrumConfig::interval(length, 400))
    }

    /// Determinant of `[[F0 - d1 λ - ξ, F1], [σ G0, σ G1 - d2 λ - ξ]]` at
    /// `ξ = 0`, written out from the Jacobian entries.
    fn q_from_jacobian(spec: &ModelSpec, eq: &EquilibriumReport, l: f64) -> f64 {
        let [[fu, fv], [gu, gv]] = eq.jac;
        (fu - spec.d1 * l) * (gv - spec.d2 * l) - fv * gu
    }

    #[test]
    fn reference_lengyel_epstein_is_not_activator_inhibitor() {
        let spec =
            preset_lengyel_epstein((125.0f64 / 4.0).sqrt(), 1.0, 4.0, 0.5, 1.0, 0.5).unwrap();
        let eq = find_equilibrium(&spec).unwrap();
        let err = classify_pde_stability(&spec, &eq, &SpectrumConfig::interval(100.0, 50));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn short_domain_is_case_one() {
        let (spec, eq, _) = turing_le(40.0, 1.0);
        let rep = classify_pde_stability(&spec, &eq, &SpectrumConfig::interval(1.0, 10)).unwrap();
        assert_eq!(rep.verdict, TuringVerdict::StableCase1);
        assert!(rep.d_tilde.is_empty());
        assert!(rep.i_alpha.is_none());
    }

    #[test]
    fn q_matches_jacobian_determinant() {
        let (spec, eq, cfg) = turing_le(20.0, 30.0);
        let rep = classify_pde_stability(&spec, &eq, &cfg).unwrap();
        for m in &rep.modes {
            let direct = q_from_jacobian(&spec, &eq, m.eigenvalue);
            assert!((m.q - direct).abs() <= 1e-10 * direct.abs().max(1.0));
            assert!(m.p > 0.0);
        }
        assert!(rep.modes[0].q > 0.0 && eq.det > 0.0);
    }

    #[test]
    fn verdict_flips_across_critical_ratio() {
        let (spec, eq, cfg) = turing_le(20.0, 30.0);
        let d_crit = classify_pde_stability(&spec, &eq, &cfg)
            .unwrap()
            .d_crit
            .unwrap();
        let below = spec.with_param("d2", 0.5 * d_crit * spec.sigma).unwrap();
        let above = spec.with_param("d2", 2.0 * d_crit * spec.sigma).unwrap();
        let r_below = classify_pde_stability(&below, &eq, &cfg).unwrap();
        let r_above = classify_pde_stability(&above, &eq, &cfg).unwrap();
        assert_eq!(r_below.verdict, TuringVerdict::StableCase2);
        assert!(r_below.modes.iter().all(|m| m.q > 0.0));
        assert_eq!(r_above.verdict, TuringVerdict::Unstable);
        let k = r_above.witness_mode.unwrap();
        assert!(r_above.modes[k].q < 0.0);
        assert!(r_above.modes[k].leading_growth_rate() > 0.0);
    }

    #[test]
    fn truncation_is_reported() {
        let (spec, eq, _) = turing_le(20.0, 100.0);
        let err = classify_pde_stability(&spec, &eq, &SpectrumConfig::interval(100.0, 5));
        assert!(matches!(err, Err(Error::Truncation { max_modes: 5, .. })));
    }

    #[test]
    fn exact_tie_is_stable_with_boundary_flag() {
        let (spec, eq, cfg) = turing_le(20.0, 30.0);
        let rep = classify_pde_stability(&spec, &eq, &cfg).unwrap();
        let d_crit = rep.d_crit.unwrap();
        // construct d2 whose ratio reproduces d_crit bit-for-bit
        let mut d2 = d_crit * spec.sigma;
        for _ in 0..8 {
            if d2 / spec.sigma == d_crit {
                break;
            }
            d2 = f64::from_bits(if d2 / spec.sigma < d_crit {
                d2.to_bits() + 1
            } else {
                d2.to_bits() - 1
            });
        }
        if d2 / spec.sigma == d_crit {
            let tie = spec.with_param("d2", d2).unwrap();
            let rep = classify_pde_stability(&tie, &eq, &cfg).unwrap();
            assert_eq!(rep.verdict, TuringVerdict::StableCase2);
            assert!(rep.boundary);
        }
    }
}
