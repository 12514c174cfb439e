//! Invariant rectangle and a-priori bounds for a box of initial data.

use rdstab::bounds::{check_invariant_rectangle, compute_bounds, Decomposition};
use rdstab::model::preset_lengyel_epstein;

fn main() -> rdstab::Result<()> {
    let spec = preset_lengyel_epstein(f64::sqrt(125.0 / 4.0), 1.0, 4.0, 0.5, 1.0, 0.5)?;

    let ((u_lo, u_hi), (v_lo, v_hi)) = spec.invariant_rectangle();
    let rect = check_invariant_rectangle(&spec, 1024)?;
    println!(
        "R = [{u_lo}, {u_hi:.4}] x [{v_lo}, {v_hi:.4}], flow points inward: {}",
        rect.holds
    );

    // fφ = a - uμ and gφ = u·1 for this preset
    let dec = Decomposition::for_preset(&spec, spec.delta, 100_000)?;
    println!(
        "K = {:.4}, Psi in [{:.4}, {:.4}], Phi in [{:.4}, {:.4}]",
        dec.k, dec.psi_min, dec.psi_max, dec.phi_min, dec.phi_max
    );

    for (u0, v0) in [((4.0, 4.0), (3.0, 3.0)), ((0.5, 5.0), (0.5, 40.0))] {
        let b = compute_bounds(&spec, &dec, u0, v0)?;
        println!("\nu0 in {u0:?}, v0 in {v0:?}");
        println!(
            "  trapping rectangle [{:.5}, {:.5}] x [{:.5}, {:.5}]",
            b.u1, b.u2, b.v1, b.v2
        );
        println!(
            "  C1 = {:.5}, C2 = {:.5}, C2_box = {:.5}",
            b.c1, b.c2, b.c2_box
        );
    }
    Ok(())
}
