//! A perturbed Lengyel-Epstein profile relaxing to the constant state under
//! diffusion. Prints the sup distance to the equilibrium every 20 time units.

use rdstab::model::preset_lengyel_epstein;
use rdstab::sim::{integrate_pde_1d, Grid1D, InitialData};

fn main() -> rdstab::Result<()> {
    let spec = preset_lengyel_epstein(f64::sqrt(125.0 / 4.0), 1.0, 4.0, 0.5, 1.0, 0.5)?;
    let grid = Grid1D::new(100.0, 128)?;
    let init = InitialData::SinePerturbed {
        u_base: 4.0,
        v_base: 3.0,
        amp: 0.2,
        wavelen_param: 5.0,
    };
    let traj = integrate_pde_1d(&spec, &grid, &init, 200.0, 20.0)?;
    for (t, d) in traj.times.iter().zip(&traj.diagnostics) {
        let bar = "#".repeat((40.0 + d.dist_sup.log10() * 3.0).max(0.0) as usize);
        println!("t = {t:>5.0}  sup|w - w*| = {:.3e}  {bar}", d.dist_sup);
    }
    for w in &traj.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
