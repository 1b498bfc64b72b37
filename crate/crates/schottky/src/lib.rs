//! Numerical and exact machinery around the theta-constant embedding of the
//! moduli of principally polarized abelian varieties.
//!
//! Three subsystems:
//!
//! - [`theta`]: second-order theta constants and their first and second
//!   period-matrix derivatives, evaluated by truncated lattice sums with a
//!   certified tail bound;
//! - [`kp`]: a numerical Schottky test that decides whether a period matrix
//!   looks like a Jacobian by minimizing the residual of the KP equation in
//!   its theta-constant form, plus the associated rank test and a sampling
//!   screen for candidate theta relations;
//! - [`degrees`]: exact rational evaluation of the level-cover index,
//!   Bernoulli/zeta-based intersection numbers, the degree tables of the
//!   theta images, the explicit degree upper bound, and the effective
//!   Nullstellensatz problem sizes.
//!
//! The `schottky` binary exposes each capability as a subcommand with JSON
//! output; the `examples/` directory has one runnable walkthrough per
//! capability. All sampling and optimization is deterministic in the
//! provided seeds.

pub mod degrees;
pub mod error;
pub mod io;
pub mod kp;
pub mod rng;
pub mod theta;

pub use error::{Error, Result};
