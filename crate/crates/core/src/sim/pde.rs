//! Method of lines for the 1-D system on `[0, L]` with no-flux ends.
//!
//! The Laplacian is the three-point stencil with mirror ghost nodes
//! `u_{-1} = u_1`, `u_n = u_{n-2}`; time stepping is classical RK4 with a
//! fixed step inside each output interval.

use crate::error::{Error, Result};
use crate::model::ModelSpec;

use super::ode::output_times;
use super::{Grid1D, InitialData, SimOptions, Trajectory};

const BLOWUP: f64 = 1e12;
const NEGATIVITY_TOLERANCE: f64 = 1e-10;

/// Largest row sum of `|J|` for the reaction Jacobian over a 64×64 sample
/// of `(0, u_hi] × [0, v_hi]`.
pub(crate) fn reaction_lipschitz(spec: &ModelSpec, u_hi: f64, v_hi: f64) -> f64 {
    let n = 64;
    let mut lip: f64 = 0.0;
    for i in 0..n {
        let u = u_hi * (i as f64 + 0.5) / n as f64;
        for j in 0..n {
            let v = v_hi * j as f64 / (n - 1) as f64;
            let [[a, b], [c, d]] = spec.jacobian(u, v);
            let row = (a.abs() + b.abs()).max(c.abs() + d.abs());
            if row.is_finite() {
                lip = lip.max(row);
            }
        }
    }
    lip
}

/// Maximum stable step: `0.4 dx² / (2 max(d1, d2))` for diffusion and
/// `0.1 / Lip` for the reaction, with `Lip` estimated over the box
/// `(0, u_hi] × [0, v_hi]`.
pub fn pde_time_step(spec: &ModelSpec, grid: &Grid1D, u_hi: f64, v_hi: f64, reaction: bool) -> f64 {
    let dx = grid.dx();
    let diffusive = 0.4 * dx * dx / (2.0 * spec.d1.max(spec.d2));
    if !reaction {
        return diffusive;
    }
    let lip = reaction_lipschitz(spec, u_hi, v_hi);
    if lip > 0.0 {
        diffusive.min(0.1 / lip)
    } else {
        diffusive
    }
}

struct Rhs<'a> {
    spec: &'a ModelSpec,
    c1: f64,
    c2: f64,
    reaction: bool,
}

impl Rhs<'_> {
    fn eval(&self, u: &[f64], v: &[f64], du: &mut [f64], dv: &mut [f64]) {
        let n = u.len();
        for j in 0..n {
            let l = if j == 0 { 1 } else { j - 1 };
            let r = if j + 1 == n { n - 2 } else { j + 1 };
            let lap_u = u[l] - 2.0 * u[j] + u[r];
            let lap_v = v[l] - 2.0 * v[j] + v[r];
            let (fu, gv) = if self.reaction {
                self.spec.reaction(u[j], v[j])
            } else {
                (0.0, 0.0)
            };
            du[j] = self.c1 * lap_u + fu;
            dv[j] = self.c2 * lap_v + gv;
        }
    }
}

struct Rk4Workspace {
    k: [Vec<f64>; 8],
    tu: Vec<f64>,
    tv: Vec<f64>,
}

impl Rk4Workspace {
    fn new(n: usize) -> Self {
        Self {
            k: std::array::from_fn(|_| vec![0.0; n]),
            tu: vec![0.0; n],
            tv: vec![0.0; n],
        }
    }

    fn step(&mut self, rhs: &Rhs, u: &mut [f64], v: &mut [f64], h: f64) {
        let n = u.len();
        let [k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v] = &mut self.k;
        let (tu, tv) = (&mut self.tu, &mut self.tv);

        rhs.eval(u, v, k1u, k1v);
        for j in 0..n {
            tu[j] = u[j] + 0.5 * h * k1u[j];
            tv[j] = v[j] + 0.5 * h * k1v[j];
        }
        rhs.eval(tu, tv, k2u, k2v);
        for j in 0..n {
            tu[j] = u[j] + 0.5 * h * k2u[j];
            tv[j] = v[j] + 0.5 * h * k2v[j];
        }
        rhs.eval(tu, tv, k3u, k3v);
        for j in 0..n {
            tu[j] = u[j] + h * k3u[j];
            tv[j] = v[j] + h * k3v[j];
        }
        rhs.eval(tu, tv, k4u, k4v);
        let w = h / 6.0;
        for j in 0..n {
            u[j] += w * (k1u[j] + 2.0 * k2u[j] + 2.0 * k3u[j] + k4u[j]);
            v[j] += w * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
        }
    }
}

pub fn integrate_pde_1d(
    spec: &ModelSpec,
    grid: &Grid1D,
    init: &InitialData,
    t_end: f64,
    dt_out: f64,
) -> Result<Trajectory> {
    integrate_pde_1d_with(spec, grid, init, t_end, dt_out, &SimOptions::default())
}

pub fn integrate_pde_1d_with(
    spec: &ModelSpec,
    grid: &Grid1D,
    init: &InitialData,
    t_end: f64,
    dt_out: f64,
    opts: &SimOptions,
) -> Result<Trajectory> {
    let times = output_times(t_end, dt_out)?;
    let (mut u, mut v) = init.sample(grid)?;

    let u_hi = u.iter().copied().fold(spec.delta, f64::max);
    let v_hi = v.iter().copied().fold(spec.g.eval(spec.delta), f64::max);
    let mut dt_max = pde_time_step(spec, grid, u_hi, v_hi, opts.reaction);
    if let Some(cap) = opts.dt_max {
        dt_max = dt_max.min(cap);
    }
    if !(dt_max >= 1e-14 * t_end) {
        return Err(Error::Step { t: 0.0, dt: dt_max });
    }

    let dx2 = grid.dx() * grid.dx();
    let rhs = Rhs {
        spec,
        c1: spec.d1 / dx2,
        c2: spec.d2 / dx2,
        reaction: opts.reaction,
    };
    let mut work = Rk4Workspace::new(grid.n);
    let mut traj = Trajectory::new(Some(*grid), opts.reference(spec));
    traj.push(spec, 0.0, &u, &v);
    let mut warned = false;

    for w in times.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let steps = ((t1 - t0) / dt_max).ceil().max(1.0) as usize;
        let h = (t1 - t0) / steps as f64;
        for s in 0..steps {
            work.step(&rhs, &mut u, &mut v, h);
            let t = t0 + (s + 1) as f64 * h;
            let mut min = f64::INFINITY;
            for &x in u.iter().chain(&v) {
                if !x.is_finite() || x.abs() > BLOWUP {
                    return Err(Error::Blowup { t });
                }
                min = min.min(x);
            }
            if min < -NEGATIVITY_TOLERANCE && !warned {
                traj.warnings
                    .push(format!("negativity: a node reached {min:e} at t = {t}"));
                warned = true;
            }
        }
        traj.push(spec, t1, &u, &v);
    }
    Ok(traj)
}
