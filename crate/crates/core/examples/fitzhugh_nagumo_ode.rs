//! Kinetics-only run of FitzHugh-Nagumo with a constant stimulus.

use rdstab::analysis::find_equilibrium;
use rdstab::model::preset_fitzhugh_nagumo;
use rdstab::sim::integrate_ode;

fn main() -> rdstab::Result<()> {
    let spec = preset_fitzhugh_nagumo(0.139, 0.008, 2.54, 2.0, 1.0, 1.0)?;
    let eq = find_equilibrium(&spec)?;
    println!(
        "delta = {:.4}, equilibrium = ({:.4}, {:.4})",
        spec.delta, eq.u_star, eq.v_star
    );

    let traj = integrate_ode(&spec, (0.5, 1.2), 600.0, 20.0)?;
    println!("{:>8} {:>10} {:>10} {:>12}", "t", "u", "v", "distance");
    for k in 0..traj.len() {
        println!(
            "{:>8.1} {:>10.6} {:>10.6} {:>12.3e}",
            traj.times[k], traj.u[k][0], traj.v[k][0], traj.diagnostics[k].dist_sup
        );
    }
    println!("converged: {}", traj.converged());
    Ok(())
}
