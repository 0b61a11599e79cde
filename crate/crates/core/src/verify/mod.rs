//! Numerical verification: integrate the full nonlinear system, find periodic
//! orbits and compare their measured norms with the a-priori bounds.

mod integrator;
mod orbit;
mod potential;

use serde::Serialize;

pub use integrator::{integrate, Dynamics, Integration, ESCAPE_RADIUS};
pub use orbit::{find_limit_cycle, MeasuredNorm, OrbitOptions, OrbitOutcome, OrbitSample, Quantity};
pub use potential::ConcreteGradient;

use crate::bounds::bound_report;
use crate::forcing::TrigForcing;
use crate::system_model::{PotentialKind, SystemSpec};
use crate::Result;

/// Relative slack allowed for quadrature error in the measured norms.
pub const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: f64,
    pub measured: f64,
    /// `bound - measured`
    pub slack: f64,
    pub refinement_change: f64,
    pub pass: bool,
}

impl BoundCheck {
    fn new(name: &'static str, bound: f64, measured: MeasuredNorm) -> Self {
        let slack = bound - measured.value;
        Self {
            name,
            bound,
            measured: measured.value,
            slack,
            refinement_change: measured.refinement_change,
            pass: slack >= -CHECK_TOL * bound.abs().max(1e-300),
        }
    }
}

/// Compare every applicable bound with the measured norms of `orbit`. The
/// sup-norm bound uses the orbit's own `|x(0)|`.
pub fn check_bounds(spec: &SystemSpec, forcing: &TrigForcing, orbit: &OrbitSample) -> Result<Vec<BoundCheck>> {
    let report = bound_report(spec, forcing, orbit.periods, orbit.initial_position_magnitude())?;
    let velocity = orbit.lp_norm(Quantity::Velocity, 2.0)?;
    let mut checks = vec![BoundCheck::new("velocity_l2_basic", report.velocity_l2_basic, velocity)];
    if let Some(b) = report.displacement_lr {
        checks.push(BoundCheck::new("displacement_lr", b, orbit.lp_norm(Quantity::Position, spec.potential.r)?));
    }
    if let Some(b) = report.velocity_l2_improved {
        checks.push(BoundCheck::new("velocity_l2_improved", b, velocity));
    }
    checks.push(BoundCheck::new(
        "linfty_orbit",
        report.linfty_orbit,
        orbit.lp_norm(Quantity::Position, f64::INFINITY)?,
    ));
    debug_assert!(spec.potential.kind != PotentialKind::None || checks.len() == 2);
    Ok(checks)
}
