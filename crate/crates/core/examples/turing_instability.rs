//! Diffusion-driven instability.
//!
//! With activator-inhibitor kinetics the constant state is stable for the
//! ODE, yet a large enough inhibitor diffusivity `d2` destabilizes it. This
//! example finds the critical ratio `d2/σ` on a short interval, then
//! simulates just above it and compares the measured growth of the first
//! cosine mode with the root of the mode's characteristic polynomial.

use std::f64::consts::PI;

use rdstab::analysis::{classify_pde_stability, find_equilibrium, SpectrumConfig};
use rdstab::model::preset_lengyel_epstein;
use rdstab::sim::{integrate_pde_1d, Grid1D, InitialData};

fn main() -> rdstab::Result<()> {
    let (a, mu, lambda, sigma, d1) = (15.0, 1.0, 4.0, 8.0, 1.0);
    let length = 2.75;
    let spectrum = SpectrumConfig::interval(length, 100);

    let probe = preset_lengyel_epstein(a, mu, lambda, sigma, d1, sigma)?;
    let eq = find_equilibrium(&probe)?;
    let base = classify_pde_stability(&probe, &eq, &spectrum)?;
    let d_crit = base.d_crit.expect("an unstable band exists");
    println!("F0 = {:.4}, modes in the band: {:?}", base.f0, base.i_alpha);
    for c in &base.d_tilde {
        println!(
            "  mode {} (eigenvalue {:.4}): d_tilde = {:.6}",
            c.index, c.eigenvalue, c.d_tilde
        );
    }

    for factor in [0.8, 1.5] {
        let spec = preset_lengyel_epstein(a, mu, lambda, sigma, d1, factor * d_crit * sigma)?;
        let rep = classify_pde_stability(&spec, &eq, &spectrum)?;
        let rate = rep.modes[1].leading_growth_rate();
        println!(
            "\nd2/sigma = {factor} x d_crit: {} (mode-1 rate {rate:+.4})",
            rep.verdict.as_str()
        );

        let grid = Grid1D::new(length, 65)?;
        let init = InitialData::Mode {
            u_base: eq.u_star,
            v_base: eq.v_star,
            u_amp: 1e-5,
            v_amp: 0.0,
            mode: 1,
        };
        let traj = integrate_pde_1d(&spec, &grid, &init, 8.0, 2.0)?;
        for (t, u) in traj.times.iter().zip(&traj.u) {
            let amp: f64 = u
                .iter()
                .enumerate()
                .map(|(j, x)| (x - eq.u_star) * (PI * grid.node(j) / length).cos())
                .sum::<f64>()
                * 2.0
                / grid.n as f64;
            println!(
                "  t = {t:.0}: mode-1 amplitude {amp:+.3e}, linear theory {:+.3e}",
                1e-5 * (rate * t).exp()
            );
        }
    }
    Ok(())
}
