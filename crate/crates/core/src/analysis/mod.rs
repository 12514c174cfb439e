//! Equilibrium, linear stability of the kinetics and diffusion-driven
//! stability of the constant steady state.

mod equilibrium;
mod spectrum;
mod turing;

pub use equilibrium::{check_global_ode, find_equilibrium, EquilibriumReport};
pub use spectrum::{neumann_eigenvalues, Geometry, SpectrumConfig};
pub use turing::{classify_pde_stability, ModeDiagnostics, TuringReport, TuringVerdict};
