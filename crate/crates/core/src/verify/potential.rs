//! Concrete potential gradients used when integrating orbits.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::numeric::euclidean;
use crate::system_model::{PotentialEnvelope, PotentialKind};
use crate::{Error, Result};

/// `∇U` for the potentials the integrator knows about.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConcreteGradient {
    Zero,
    /// Componentwise Duffing term `∇U_i = sign · δ x_i³`. Its envelope
    /// constant is `δ / d` (`Σ x_i⁴ >= |x|⁴ / d`).
    Cubic { delta: f64, sign: f64 },
    /// Radial quartic `U = sign · δ |x|⁴ / 4`, so `∇U = sign · δ |x|² x`.
    /// Envelope constant `δ` in every dimension.
    RadialCubic { delta: f64, sign: f64 },
}

impl ConcreteGradient {
    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        match *self {
            ConcreteGradient::Zero => out.fill(0.0),
            ConcreteGradient::Cubic { delta, sign } => {
                for (o, v) in out.iter_mut().zip(x) {
                    *o = sign * delta * v * v * v;
                }
            }
            ConcreteGradient::RadialCubic { delta, sign } => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                for (o, v) in out.iter_mut().zip(x) {
                    *o = sign * delta * r2 * v;
                }
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.eval_into(x, &mut out);
        out
    }

    /// Sample the envelope inequalities at `samples` seeded points: the growth
    /// condition on the ball of radius `10 R`, the gradient bound on `|x| <= R`.
    pub fn check_envelope(
        &self,
        envelope: &PotentialEnvelope,
        dim: usize,
        radius: f64,
        samples: usize,
        seed: u64,
    ) -> Result<()> {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut x = vec![0.0; dim];
        let mut g = vec![0.0; dim];
        for i in 0..samples {
            // Alternate between interior points and points on the sphere.
            for v in x.iter_mut() {
                *v = rng.gen_range(-1.0..=1.0);
            }
            let norm = euclidean(&x);
            if norm == 0.0 {
                continue;
            }
            let target = if i % 2 == 0 { radius } else { radius * rng.gen_range(0.0..10.0) };
            x.iter_mut().for_each(|v| *v *= target / norm);
            self.eval_into(&x, &mut g);

            let mag = target;
            let dot: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
            let growth = envelope.u0 * mag.powf(envelope.r);
            let slack = 1e-12 * (growth + dot.abs()) + 1e-300;
            let ok = match envelope.kind {
                PotentialKind::Hardening => dot >= growth - slack,
                PotentialKind::Softening => dot <= -growth + slack,
                PotentialKind::None => true,
            };
            if !ok {
                return Err(Error::Inconsistent(format!(
                    "gradient violates the {:?} growth envelope at |x| = {mag}",
                    envelope.kind
                )));
            }
            if mag <= radius * (1.0 + 1e-12) {
                let gm = euclidean(&g);
                if gm > envelope.grad_bound * (1.0 + 1e-12) {
                    return Err(Error::Inconsistent(format!(
                        "|grad U| = {gm} exceeds U0 = {} at |x| = {mag}",
                        envelope.grad_bound
                    )));
                }
            }
        }
        Ok(())
    }
}
