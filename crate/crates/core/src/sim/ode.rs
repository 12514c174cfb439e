//! Adaptive classical RK4 for the kinetics `u' = F(u, v)`, `v' = G(u, v)`.
//!
//! Step size is controlled by step doubling: one step of size `h` is
//! compared with two of size `h/2`, and the accepted value is the
//! Richardson-extrapolated one.

use crate::error::{Error, Result};
use crate::model::ModelSpec;

use super::{SimOptions, Trajectory};

const BLOWUP: f64 = 1e12;

/// Snapshot times `0, dt_out, 2 dt_out, …, t_end` (the last interval may
/// be shorter).
pub(crate) fn output_times(t_end: f64, dt_out: f64) -> Result<Vec<f64>> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Domain(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    if !(dt_out > 0.0 && dt_out.is_finite()) {
        return Err(Error::Domain(format!(
            "dt_out must be positive, got {dt_out}"
        )));
    }
    let n = (t_end / dt_out * (1.0 - 1e-12)).floor() as usize;
    let mut times: Vec<f64> = (0..=n).map(|k| k as f64 * dt_out).collect();
    if t_end - times[n] > 1e-12 * t_end {
        times.push(t_end);
    } else {
        times[n] = t_end;
    }
    Ok(times)
}

#[inline]
fn rk4_step(rhs: &impl Fn(f64, f64) -> (f64, f64), u: f64, v: f64, h: f64) -> (f64, f64) {
    let (k1u, k1v) = rhs(u, v);
    let (k2u, k2v) = rhs(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
    let (k3u, k3v) = rhs(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
    let (k4u, k4v) = rhs(u + h * k3u, v + h * k3v);
    (
        u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
        v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

pub fn integrate_ode(
    spec: &ModelSpec,
    init: (f64, f64),
    t_end: f64,
    dt_out: f64,
) -> Result<Trajectory> {
    integrate_ode_with(spec, init, t_end, dt_out, &SimOptions::default())
}

pub fn integrate_ode_with(
    spec: &ModelSpec,
    init: (f64, f64),
    t_end: f64,
    dt_out: f64,
    opts: &SimOptions,
) -> Result<Trajectory> {
    let (u0, v0) = init;
    if !(u0 > 0.0 && v0 > 0.0 && u0.is_finite() && v0.is_finite()) {
        return Err(Error::Domain(format!(
            "ODE initial state must be positive, got ({u0}, {v0})"
        )));
    }
    let times = output_times(t_end, dt_out)?;
    let reaction = opts.reaction;
    let rhs = |u: f64, v: f64| {
        if reaction {
            spec.reaction(u, v)
        } else {
            (0.0, 0.0)
        }
    };

    let mut traj = Trajectory::new(None, opts.reference(spec));
    let (mut u, mut v) = (u0, v0);
    let mut t = 0.0;
    traj.push(spec, t, &[u], &[v]);

    let h_min = 1e-14 * t_end;
    let mut h = dt_out.min(t_end) * 1e-2;
    for &target in &times[1..] {
        while t < target {
            let last = target - t <= h;
            let step = if last { target - t } else { h };
            let (u1, v1) = rk4_step(&rhs, u, v, step);
            let (uh, vh) = rk4_step(&rhs, u, v, 0.5 * step);
            let (u2, v2) = rk4_step(&rhs, uh, vh, 0.5 * step);
            let eu =
                (u2 - u1).abs() / 15.0 / (opts.ode_atol + opts.ode_rtol * u.abs().max(u2.abs()));
            let ev =
                (v2 - v1).abs() / 15.0 / (opts.ode_atol + opts.ode_rtol * v.abs().max(v2.abs()));
            let err = eu.max(ev);
            if !err.is_finite()
                && (!(u2.is_finite() && v2.is_finite()) || u2.abs() > BLOWUP || v2.abs() > BLOWUP)
            {
                return Err(Error::Blowup { t });
            }
            if err <= 1.0 {
                u = u2 + (u2 - u1) / 15.0;
                v = v2 + (v2 - v1) / 15.0;
                t = if last { target } else { t + step };
                if !(u.is_finite() && v.is_finite()) || u.abs() > BLOWUP || v.abs() > BLOWUP {
                    return Err(Error::Blowup { t });
                }
            }
            let factor = if err == 0.0 {
                5.0
            } else if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                0.2
            };
            // a short final step says nothing about the natural step size
            if !(last && err <= 1.0) {
                h = step * factor;
            }
            if h < h_min {
                return Err(Error::Step { t, dt: h });
            }
        }
        traj.push(spec, t, &[u], &[v]);
    }
    Ok(traj)
}
