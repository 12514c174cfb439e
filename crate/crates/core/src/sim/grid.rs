use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform node-centred grid on `[0, length]`, `n` nodes including both
/// boundary nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    pub length: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(length: f64, n: usize) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::Domain(format!(
                "grid length must be positive, got {length}"
            )));
        }
        if n < 8 {
            return Err(Error::Domain(format!(
                "grid needs at least 8 nodes, got {n}"
            )));
        }
        Ok(Self { length, n })
    }

    pub fn dx(&self) -> f64 {
        self.length / (self.n - 1) as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        // exact at both ends
        if j + 1 == self.n {
            self.length
        } else {
            j as f64 * self.dx()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|j| self.node(j))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    Constant {
        u0: f64,
        v0: f64,
    },
    /// `u = u_base + amp·sin(x/w)`, `v = v_base + amp·cos(x/w)`.
    SinePerturbed {
        u_base: f64,
        v_base: f64,
        amp: f64,
        wavelen_param: f64,
    },
    /// A single Neumann mode: base values plus amplitudes times
    /// `cos(kπx/L)`.
    Mode {
        u_base: f64,
        v_base: f64,
        u_amp: f64,
        v_amp: f64,
        mode: usize,
    },
    /// Explicit nodal values.
    Field {
        u: Vec<f64>,
        v: Vec<f64>,
    },
}

impl InitialData {
    /// Nodal values on `grid`. Values must be finite and non-negative.
    pub fn sample(&self, grid: &Grid1D) -> Result<(Vec<f64>, Vec<f64>)> {
        let (u, v): (Vec<f64>, Vec<f64>) = match self {
            InitialData::Constant { u0, v0 } => (vec![*u0; grid.n], vec![*v0; grid.n]),
            InitialData::SinePerturbed {
                u_base,
                v_base,
                amp,
                wavelen_param,
            } => {
                if *wavelen_param == 0.0 {
                    return Err(Error::Domain(
                        "wavelength parameter must be non-zero".into(),
                    ));
                }
                grid.nodes()
                    .map(|x| {
                        let s = x / wavelen_param;
                        (u_base + amp * s.sin(), v_base + amp * s.cos())
                    })
                    .unzip()
            }
            InitialData::Mode {
                u_base,
                v_base,
                u_amp,
                v_amp,
                mode,
            } => {
                let k = *mode as f64 * std::f64::consts::PI / grid.length;
                grid.nodes()
                    .map(|x| {
                        let c = (k * x).cos();
                        (u_base + u_amp * c, v_base + v_amp * c)
                    })
                    .unzip()
            }
            InitialData::Field { u, v } => {
                if u.len() != grid.n || v.len() != grid.n {
                    return Err(Error::Domain(format!(
                        "initial field has {} / {} values, grid has {} nodes",
                        u.len(),
                        v.len(),
                        grid.n
                    )));
                }
                (u.clone(), v.clone())
            }
        };
        if let Some(bad) = u.iter().chain(&v).find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::Domain(format!(
                "initial data must be finite and non-negative, found {bad}"
            )));
        }
        Ok((u, v))
    }

    /// Spatially uniform part, used as the ODE initial state.
    pub fn base(&self) -> (f64, f64) {
        match self {
            InitialData::Constant { u0, v0 } => (*u0, *v0),
            InitialData::SinePerturbed { u_base, v_base, .. }
            | InitialData::Mode { u_base, v_base, .. } => (*u_base, *v_base),
            InitialData::Field { u, v } => (
                u.iter().sum::<f64>() / u.len().max(1) as f64,
                v.iter().sum::<f64>() / v.len().max(1) as f64,
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing() {
        let g = Grid1D::new(100.0, 256).unwrap();
        assert!((g.dx() * 255.0 - 100.0).abs() < 1e-12);
        assert_eq!(g.node(255), 100.0);
        assert!(Grid1D::new(1.0, 4).is_err());
        assert!(Grid1D::new(-1.0, 16).is_err());
    }

    #[test]
    fn sine_perturbation_values() {
        let g = Grid1D::new(100.0, 11).unwrap();
        let init = InitialData::SinePerturbed {
            u_base: 4.0,
            v_base: 3.0,
            amp: 0.2,
            wavelen_param: 5.0,
        };
        let (u, v) = init.sample(&g).unwrap();
        assert_eq!(u[0], 4.0);
        assert_eq!(v[0], 3.2);
        assert!((u[1] - (4.0 + 0.2 * 2f64.sin())).abs() < 1e-15);
    }

    #[test]
    fn rejects_negative_and_mismatched_fields() {
        let g = Grid1D::new(1.0, 8).unwrap();
        let neg = InitialData::Constant { u0: -0.1, v0: 1.0 };
        assert!(neg.sample(&g).is_err());
        let short = InitialData::Field {
            u: vec![1.0; 7],
            v: vec![1.0; 8],
        };
        assert!(short.sample(&g).is_err());
    }
}
