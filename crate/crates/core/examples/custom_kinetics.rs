//! A model built from closures instead of a preset.
//!
//! `f(u) = 3 - u`, `g(u) = u²`, `φ(u) = u/(1 + u)`, so `δ = 3`.

use rdstab::analysis::{find_equilibrium, neumann_eigenvalues, SpectrumConfig};
use rdstab::bounds::{compute_bounds, Decomposition};
use rdstab::model::{check_hypotheses, ModelSpec, ScalarFn};

fn main() -> rdstab::Result<()> {
    let f = ScalarFn::new("3 - u", |u| 3.0 - u, |_| -1.0);
    let g = ScalarFn::new("u^2", |u| u * u, |u| 2.0 * u);
    let phi = ScalarFn::new(
        "u/(1+u)",
        |u| u / (1.0 + u),
        |u| 1.0 / ((1.0 + u) * (1.0 + u)),
    );
    let spec = ModelSpec::new(f, g, phi, 1.0, 2.0, 1.0, 0.7, 3.0)?;

    let eq = find_equilibrium(&spec)?;
    println!("alpha = {:.6}, Jacobian {:?}", eq.alpha, eq.jac);
    let hyp = check_hypotheses(&spec, eq.alpha, 2048)?;
    println!(
        "standing hypotheses hold: {}",
        hyp.standing_hypotheses_hold()
    );

    // K - uΨ(u) = fφ gives K = 3 numerically
    let dec = Decomposition::from_spec(&spec, 3.0, spec.delta, 10_000)?;
    let b = compute_bounds(&spec, &dec, (1.0, 2.0), (1.0, 2.0))?;
    println!(
        "C1 = {:.4}, C2 = {:.4}, decomposition positive: {}",
        b.c1, b.c2, b.valid
    );

    let eig = neumann_eigenvalues(&SpectrumConfig::rectangle(2.0, 1.0, 6))?;
    println!("first Neumann eigenvalues of [0,2]x[0,1]: {eig:.4?}");
    Ok(())
}
