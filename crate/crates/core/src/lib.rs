//! Bounds on the critical coupling constant of attractive central potentials.
//!
//! For a potential `V(r) = -g v(r)` with a nonnegative shape `v`, the critical
//! coupling `g_c` is the smallest strength at which an `l`-wave bound state
//! first appears. This crate brackets `g_c` from both sides:
//!
//! * lower limits from necessary conditions (Bargmann-Schwinger, the second and
//!   third order nested conditions, and the Glaser-Grosse-Martin-Thirring bound
//!   optimised over its exponent),
//! * upper limits from sufficient conditions (the two Calogero conditions and a
//!   variational bound built on the Birman-Schwinger kernel, optimised over its
//!   trial-function exponent),
//! * two independent reference values for `g_c` itself: zero-energy shooting of
//!   the radial equation and a Nystrom eigen-solve of the Birman-Schwinger
//!   kernel.
//!
//! ```
//! use gcrit::{limits, AngularMomentum, Potential, QuadratureConfig};
//!
//! let well = Potential::square_well(1.0).unwrap();
//! let cfg = QuadratureConfig::default();
//! let ell = AngularMomentum::new(0);
//! let lower = limits::lower_bargmann_schwinger(&well, ell, &cfg).unwrap();
//! let upper = limits::upper_variational_square_well(ell);
//! assert!(lower.value < upper.value);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exact;
pub mod exec;
pub mod limits;
pub(crate) mod optimize;
pub mod potential;
pub mod quad;
pub mod report;
pub mod tables;

pub use error::{Error, Result};
pub use exec::Execution;
pub use limits::{BoundResult, Method, SandwichReport, Side};
pub use potential::{AngularMomentum, Potential, PotentialKind};
pub use quad::{IntegralResult, QuadratureConfig};
pub use tables::{TableArtifact, TableId};
