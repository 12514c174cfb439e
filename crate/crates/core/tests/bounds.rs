use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rdstab::bounds::{compute_bounds, Decomposition};
use rdstab::model::preset_lengyel_epstein;
use rdstab::sim::{integrate_pde_1d, Grid1D, InitialData};
use rdstab::ModelSpec;

fn le() -> ModelSpec {
    preset_lengyel_epstein((125.0f64 / 4.0).sqrt(), 1.0, 4.0, 0.5, 1.0, 0.5).unwrap()
}

/// `(min, max)` of `h` over `n` evenly spaced points of `(0, hi]`.
fn scan(h: impl Fn(f64) -> f64, hi: f64, n: usize) -> (f64, f64) {
    (1..=n)
        .map(|i| h(hi * i as f64 / n as f64))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, up), x| {
            (lo.min(x), up.max(x))
        })
}

#[test]
fn golden_values_for_the_reference_instance() {
    let spec = le();
    let a = (125.0f64 / 4.0).sqrt();
    let dec = Decomposition::for_preset(&spec, spec.delta, 100_000).unwrap();
    let b = compute_bounds(&spec, &dec, (4.0, 4.0), (3.0, 3.0)).unwrap();

    // independent oracle: recover Ψ and Φ from fφ = K - uΨ and gφ = uΦ on
    // a fine grid, then apply the bound formulas by hand
    let k = a;
    let (psi_min, psi_max) = scan(
        |u| (k - spec.f.eval(u) * spec.phi.eval(u)) / u,
        spec.delta,
        100_000,
    );
    let (phi_min, phi_max) = scan(
        |u| spec.g.eval(u) * spec.phi.eval(u) / u,
        spec.delta,
        100_000,
    );
    let dphi0 = 1.0;
    let u2 = (k / psi_max).max(4.0);
    let v2 = (u2 / spec.phi.eval(u2) * phi_max).max(3.0);
    let u1 = (k / (psi_min + spec.lambda * v2 * dphi0)).min(4.0);
    let v1 = (phi_min / dphi0).min(3.0);

    for (got, want) in [(b.u2, u2), (b.v2, v2), (b.u1, u1), (b.v1, v1)] {
        assert!(
            (got - want).abs() < 1e-9 * want.abs().max(1.0),
            "{got} vs {want}"
        );
    }
    assert!((b.u2 - a).abs() < 1e-9);
    assert!((b.v2 - 32.25).abs() < 1e-9);
    assert!((b.u1 - a / 130.0).abs() < 1e-9);
    assert!((b.v1 - 1.0).abs() < 1e-12);
    assert!((b.c1 - a / 130.0).abs() < 1e-9);
    assert!((b.c2 - a).abs() < 1e-9);
    assert!((b.c2_box - 32.25).abs() < 1e-9);
    assert!(b.valid);
}

#[test]
fn trajectories_stay_in_the_trapping_rectangle() {
    let spec = le();
    let dec = Decomposition::for_preset(&spec, spec.delta, 20_000).unwrap();
    let b = compute_bounds(&spec, &dec, (0.5, 5.0), (1.5, 20.0)).unwrap();
    let grid = Grid1D::new(10.0, 48).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..5 {
        let u: Vec<f64> = (0..grid.n).map(|_| rng.gen_range(0.5..5.0)).collect();
        let v: Vec<f64> = (0..grid.n).map(|_| rng.gen_range(1.5..20.0)).collect();
        let traj = integrate_pde_1d(&spec, &grid, &InitialData::Field { u, v }, 10.0, 0.5).unwrap();
        for (us, vs) in traj.u.iter().zip(&traj.v) {
            for (&x, &y) in us.iter().zip(vs) {
                assert!(b.contains(x, y, 1e-6), "({x}, {y}) left the rectangle");
            }
        }
    }
}
