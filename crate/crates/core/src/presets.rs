//! The scalar Duffing oscillator `x'' + c x' + k x ± δ x³ = A sin(n ω t)`.
//!
//! With `U(x) = ±δ x⁴/4` the envelope is `u0 = δ`, `r = 4`, and on the ball
//! `|x| <= R` the gradient is bounded by `U0 = δ R³`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::forcing::TrigForcing;
use crate::system_model::{PotentialEnvelope, SystemSpec};
use crate::verify::ConcreteGradient;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuffingParams {
    pub c: f64,
    pub k: f64,
    pub delta: f64,
    pub omega: f64,
    pub n: u32,
    pub radius: f64,
    pub softening: bool,
}

impl DuffingParams {
    pub fn hardening() -> Self {
        Self { c: 0.1, k: 1.1, delta: 1.0, omega: 1.0, n: 1, radius: 1.0, softening: false }
    }

    pub fn softening() -> Self {
        Self { softening: true, ..Self::hardening() }
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// `sin(n ω t)`
    pub fn unit_forcing(&self) -> TrigForcing {
        TrigForcing::scalar_sine(1.0, self.n, self.period())
            .expect("positive period and nonzero harmonic")
    }

    pub fn envelope(&self) -> PotentialEnvelope {
        let grad_bound = self.delta * self.radius.powi(3);
        if self.softening {
            PotentialEnvelope::softening(self.delta, 4.0, grad_bound)
        } else {
            PotentialEnvelope::hardening(self.delta, 4.0, grad_bound)
        }
    }

    pub fn gradient(&self) -> ConcreteGradient {
        ConcreteGradient::Cubic {
            delta: self.delta,
            sign: if self.softening { -1.0 } else { 1.0 },
        }
    }
}

pub fn duffing_system(p: &DuffingParams) -> SystemSpec {
    SystemSpec::scalar(1.0, p.c, p.k, p.envelope()).with_domain_radius(p.radius)
}
