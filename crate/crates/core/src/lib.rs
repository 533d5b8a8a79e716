//! Exact decision engine for periodic (sigma_zeta) difference-algebraic
//! dependence of solutions of first-order q-difference equations
//! `sigma_q(f) = a(z) f`, with certificate synthesis `phi(a) = sigma_q(b)/b`.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactalg`]: cyclotomic numbers and integer lattice normal forms,
//! - [`constgroup`]: the finitely presented group of multiplicative constants,
//! - [`ratfun`]: rational functions in factored form and the actions of
//!   `sigma_q`, `sigma_zeta` and multiplicative functions,
//! - [`criterion`]: the zero-row test on the exponent DFT matrix,
//! - [`witness`]: certificate synthesis, verification and a brute-force oracle,
//! - [`pseudofield`], [`gm_subgroups`], [`theta`]: supporting difference-algebra
//!   and numeric checks,
//! - [`cli`]: JSON documents and the `qdep` command line.

pub mod cli;
pub mod constgroup;
pub mod criterion;
mod error;
pub mod exactalg;
pub mod gm_subgroups;
pub mod json;
pub mod pseudofield;
pub mod ratfun;
pub mod theta;
pub mod witness;

pub use error::{Error, Result};
