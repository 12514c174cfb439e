//! Stability analysis and simulation for the generalized two-species
//! reaction-diffusion system
//!
//! ```text
//! u_t - d1 Δu = (f(u) - λ v) φ(u)
//! v_t - d2 Δv = σ (g(u) - v) φ(u)
//! ```
//!
//! with homogeneous Neumann boundaries.
//!
//! The crate is organised around the questions one asks of such a model:
//!
//! * [`model`]: the nonlinearities and parameters, the Lengyel-Epstein and
//!   FitzHugh-Nagumo presets, and the structural hypothesis checker.
//! * [`analysis`]: the constant equilibrium, its Jacobian, ODE stability and
//!   the diffusion-driven (Turing) classification.
//! * [`bounds`]: the invariant rectangle and the a-priori solution bounds.
//! * [`sim`]: adaptive RK4 for the kinetics and a method-of-lines solver for
//!   the 1-D PDE.
//! * [`lyapunov`]: the Lyapunov functional and global stability verdicts.
//! * [`cli`]: the `rdstab` command line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod lyapunov;
pub mod model;
pub mod numerics;
pub mod sim;

pub use error::{Error, Result};
pub use model::{ModelSpec, ScalarFn};
