//! A 1D solver for rarefied polyatomic gas flows based on a regularized
//! moment hierarchy with the ES-BGK collision model, plus a reduced
//! discrete-velocity reference solver for cross-validation.
//!
//! The distribution function is expanded in Hermite polynomials in the
//! velocity variables and generalized Laguerre polynomials in the internal
//! energy variable, about a local frame `(u, T_tr, T_int)` that travels
//! with the solution. The spatial discretization is a finite-volume HLL
//! scheme with linear reconstruction; convection and collision are split
//! and the collision step is handled per cell with analytic relaxation for
//! the conserved-adjacent moments and Crank-Nicolson for the rest.

pub mod basis;
pub mod cli;
pub mod closure;
pub mod config;
pub mod dvm;
pub mod error;
pub mod esbgk;
pub mod gas;
pub mod index;
pub mod moment;
pub mod preset;
pub mod profile;
pub mod projection;
pub mod solver;

pub use error::{Error, Result};
