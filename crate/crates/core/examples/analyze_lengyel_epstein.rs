//! Structural hypotheses, equilibrium and global verdict for Lengyel-Epstein
//! kinetics on both sides of the `a² = 125/4` threshold.
//!
//! ```text
//! cargo run --example analyze_lengyel_epstein
//! ```

use rdstab::analysis::find_equilibrium;
use rdstab::lyapunov::verdict_global;
use rdstab::model::{check_hypotheses, preset_lengyel_epstein, DEFAULT_HYPOTHESIS_GRID};

fn main() -> rdstab::Result<()> {
    for a2 in [125.0 / 4.0, 125.0 / 4.0 + 0.5, 125.0 / 4.0 + 1.0] {
        let spec = preset_lengyel_epstein(f64::sqrt(a2), 1.0, 4.0, 0.5, 1.0, 0.5)?;
        let eq = find_equilibrium(&spec)?;
        let hyp = check_hypotheses(&spec, eq.alpha, DEFAULT_HYPOTHESIS_GRID)?;

        println!("a^2 = {a2}");
        println!(
            "  delta = {:.6}, equilibrium ({:.6}, {:.6})",
            spec.delta, eq.u_star, eq.v_star
        );
        println!(
            "  trace {:.4}, det {:.4}, ODE-stable {}",
            eq.trace, eq.det, eq.ode_stable
        );
        for (name, c) in [
            ("con1", hyp.con1),
            ("con2", hyp.con2),
            ("con3", hyp.con3),
            ("con4", hyp.con4),
            ("con5", hyp.con5),
            ("con6", hyp.con6),
            ("f' < sigma", hyp.theorem5),
        ] {
            match c.witness {
                Some(w) if !c.holds => println!(
                    "  {name:<11} fails near u = {w:.4} (margin {:.3e})",
                    c.margin
                ),
                _ => println!("  {name:<11} holds (margin {:.3e})", c.margin),
            }
        }
        println!(
            "  global verdict: {}\n",
            verdict_global(&spec, &eq, &hyp).as_str()
        );
    }
    Ok(())
}
