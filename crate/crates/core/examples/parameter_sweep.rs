//! Parallel sweep over the inhibitor diffusivity, checking the linear
//! verdict against what the simulation does.

use rdstab::analysis::{classify_pde_stability, find_equilibrium, SpectrumConfig};
use rdstab::model::preset_lengyel_epstein;
use rdstab::sim::{sweep, Grid1D, InitialData, Scenario, SimMode};

fn main() -> rdstab::Result<()> {
    let length = 2.75;
    let probe = preset_lengyel_epstein(15.0, 1.0, 4.0, 8.0, 1.0, 8.0)?;
    let eq = find_equilibrium(&probe)?;
    let d_crit = classify_pde_stability(&probe, &eq, &SpectrumConfig::interval(length, 100))?
        .d_crit
        .unwrap();

    let factors = [0.25, 0.5, 0.9, 1.1, 2.0, 4.0];
    let specs = factors
        .iter()
        .map(|k| probe.with_param("d2", k * d_crit * probe.sigma))
        .collect::<rdstab::Result<Vec<_>>>()?;
    let scenario = Scenario {
        mode: SimMode::Pde,
        grid: Grid1D::new(length, 33)?,
        init: InitialData::Mode {
            u_base: eq.u_star,
            v_base: eq.v_star,
            u_amp: 1e-3,
            v_amp: 0.0,
            mode: 1,
        },
        t_end: 40.0,
        dt_out: 1.0,
        modes: 100,
    };
    println!("d_crit = {d_crit:.6}");
    println!(
        "{:>10} {:>12} {:>12} {:>10} {:>10}",
        "d2/sigma", "verdict", "max growth", "converged", "agrees"
    );
    for (k, s) in factors.iter().zip(sweep(&specs, &scenario)?) {
        println!(
            "{:>10.4} {:>12} {:>12.3e} {:>10} {:>10}",
            k * d_crit,
            s.verdict.map_or("-", |v| v.as_str()),
            s.max_growth.unwrap_or(f64::NAN),
            s.converged,
            s.consistent.map_or("-".into(), |c| c.to_string()),
        );
    }
    Ok(())
}
