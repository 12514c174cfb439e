//! Tracking the Lyapunov functional along a FitzHugh-Nagumo PDE run.

use rdstab::analysis::find_equilibrium;
use rdstab::lyapunov::{attach_lyapunov, check_monotone, eval_h, LyapunovConfig};
use rdstab::model::preset_fitzhugh_nagumo;
use rdstab::sim::{integrate_pde_1d, Grid1D, InitialData};

fn main() -> rdstab::Result<()> {
    let spec = preset_fitzhugh_nagumo(0.139, 0.008, 2.54, 2.0, 1.0, 1.0)?;
    let eq = find_equilibrium(&spec)?;

    // g is linear, so H is an exact parabola
    for u in [0.2, 1.0, 1.7] {
        let h = eval_h(&spec, eq.alpha, u)?;
        println!(
            "H({u}) = {h:.10}  closed form {:.10}",
            (u - eq.alpha).powi(2) / (2.0 * 2.54)
        );
    }

    let grid = Grid1D::new(100.0, 128)?;
    let init = InitialData::SinePerturbed {
        u_base: 0.5,
        v_base: 1.2,
        amp: 0.2,
        wavelen_param: 5.0,
    };
    let mut traj = integrate_pde_1d(&spec, &grid, &init, 300.0, 30.0)?;
    attach_lyapunov(&spec, &eq, &mut traj, &LyapunovConfig::default())?;
    for (t, d) in traj.times.iter().zip(&traj.diagnostics) {
        println!("t = {t:>5.0}  V = {:.6e}", d.lyapunov_v.unwrap());
    }
    let m = check_monotone(&traj, 1e-6)?;
    println!(
        "non-increasing: {}, V(end)/V(0) = {:.2e}",
        m.holds,
        m.last / m.initial
    );
    Ok(())
}
