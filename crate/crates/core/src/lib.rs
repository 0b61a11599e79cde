//! A-priori L^p estimates for periodic orbits of periodically forced,
//! linearly damped mechanical systems
//!
//! ```text
//! M x'' + C x' + K x = -grad U(x) + f(t),    f(t + T) = f(t)
//! ```
//!
//! with a polynomially bounded (hardening or softening) potential `U`.
//!
//! The crate is layered bottom-up:
//!
//! - [`system_model`]: the matrices, the potential envelope `(u0, r, U0)` and
//!   the extremal eigenvalues consumed by every estimate.
//! - [`forcing`]: finite trigonometric forcings with exact derivatives and
//!   L^p norms over one or several periods.
//! - [`linear_analysis`]: frequency-domain solution of the linear system.
//! - [`bounds`]: velocity and displacement bounds for NT-periodic orbits,
//!   plus the root estimates for the softening polynomial.
//! - [`criteria`]: non-existence criteria, the gap function `F(A)` and the
//!   critical forcing amplitude.
//! - [`verify`]: numerical orbit search (RK4 + Poincaré iteration + Newton
//!   shooting) used to check every bound against measured orbits.

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod criteria;
mod error;
pub mod forcing;
pub mod linear_analysis;
mod numeric;
pub mod presets;
pub mod quadrature;
pub mod system_model;
pub mod verify;

pub use error::{Error, Result};
pub use forcing::{NormRequest, TrigForcing};
pub use system_model::{EigenBounds, PotentialEnvelope, PotentialKind, SystemSpec};
