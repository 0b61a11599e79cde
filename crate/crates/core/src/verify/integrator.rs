//! Classical fourth-order Runge–Kutta for the first-order system
//! `y = (x, v)`, `v' = M⁻¹ (f(t) - C v - K x - ∇U(x))`.

use nalgebra::DMatrix;

use super::potential::ConcreteGradient;
use crate::forcing::TrigForcing;
use crate::numeric::euclidean;
use crate::system_model::SystemSpec;
use crate::{Error, Result};

/// State magnitude beyond which a trajectory counts as escaped.
pub const ESCAPE_RADIUS: f64 = 1e6;

pub struct Dynamics<'a> {
    dim: usize,
    mass: DMatrix<f64>,
    mass_inv: DMatrix<f64>,
    damping: DMatrix<f64>,
    stiffness: DMatrix<f64>,
    gradient: ConcreteGradient,
    forcing: &'a TrigForcing,
}

impl<'a> Dynamics<'a> {
    pub fn new(spec: &SystemSpec, gradient: ConcreteGradient, forcing: &'a TrigForcing) -> Result<Self> {
        spec.check_dimensions()?;
        if forcing.dim() != spec.dim() {
            return Err(Error::Dimension(format!(
                "forcing dimension {} differs from system dimension {}",
                forcing.dim(),
                spec.dim()
            )));
        }
        let svd = spec.mass.clone().svd(false, false);
        let (lo, hi) = (svd.singular_values.min(), svd.singular_values.max());
        if !(lo > 1e-12 * hi) {
            return Err(Error::SingularMass);
        }
        let mass_inv = spec.mass.clone().try_inverse().ok_or(Error::SingularMass)?;
        Ok(Self {
            dim: spec.dim(),
            mass: spec.mass.clone(),
            mass_inv,
            damping: spec.damping.clone(),
            stiffness: spec.stiffness.clone(),
            gradient,
            forcing,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn period(&self) -> f64 {
        self.forcing.period()
    }

    pub fn gradient(&self) -> ConcreteGradient {
        self.gradient
    }

    pub fn forcing(&self) -> &TrigForcing {
        self.forcing
    }

    /// Net force `f(t) - C v - K x - ∇U(x)` written into `out`.
    fn force(&self, t: f64, x: &[f64], v: &[f64], out: &mut [f64], grad: &mut [f64]) {
        self.forcing.evaluate_into(t, out);
        self.gradient.eval_into(x, grad);
        let d = self.dim;
        for i in 0..d {
            let mut s = out[i] - grad[i];
            for j in 0..d {
                s -= self.damping[(i, j)] * v[j] + self.stiffness[(i, j)] * x[j];
            }
            out[i] = s;
        }
    }

    pub fn acceleration(&self, t: f64, x: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut force = vec![0.0; d];
        let mut grad = vec![0.0; d];
        self.force(t, x, v, &mut force, &mut grad);
        (0..d).map(|i| (0..d).map(|j| self.mass_inv[(i, j)] * force[j]).sum()).collect()
    }

    /// `M a + C v + K x + ∇U(x) - f(t)` for a candidate acceleration `a`.
    pub fn equation_residual(&self, t: f64, x: &[f64], v: &[f64], a: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut force = vec![0.0; d];
        let mut grad = vec![0.0; d];
        self.force(t, x, v, &mut force, &mut grad);
        (0..d).map(|i| (0..d).map(|j| self.mass[(i, j)] * a[j]).sum::<f64>() - force[i]).collect()
    }

    fn rhs(&self, t: f64, y: &[f64], dy: &mut [f64], work: &mut [f64]) {
        let d = self.dim;
        let (x, v) = y.split_at(d);
        let (force, grad) = work.split_at_mut(d);
        self.force(t, x, v, force, grad);
        dy[..d].copy_from_slice(v);
        for i in 0..d {
            dy[d + i] = (0..d).map(|j| self.mass_inv[(i, j)] * force[j]).sum();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integration {
    Completed,
    Diverged { time: f64, magnitude: f64 },
}

/// Fixed-step RK4 over `[t0, t0 + duration]`. `observer` sees the initial
/// state and the state after every step. The final step is shortened so the
/// run ends exactly at `t0 + duration`.
pub fn integrate<F: FnMut(f64, &[f64])>(
    dynamics: &Dynamics<'_>,
    t0: f64,
    y: &mut [f64],
    duration: f64,
    dt: f64,
    mut observer: F,
) -> Result<Integration> {
    let n = y.len();
    if n != 2 * dynamics.dim {
        return Err(Error::Dimension(format!("state length {n}, expected {}", 2 * dynamics.dim)));
    }
    if !(dt > 0.0) || !(duration >= 0.0) {
        return Err(Error::Domain(format!("need dt > 0 and duration >= 0, got {dt}, {duration}")));
    }
    let steps = (duration / dt - 1e-9).ceil().max(0.0) as usize;
    let mut k = vec![0.0; 4 * n];
    let mut tmp = vec![0.0; n];
    let mut work = vec![0.0; 2 * dynamics.dim];
    observer(t0, y);
    for i in 0..steps {
        let t = t0 + i as f64 * dt;
        let h = if i + 1 == steps { duration - i as f64 * dt } else { dt };
        let (k1, rest) = k.split_at_mut(n);
        let (k2, rest) = rest.split_at_mut(n);
        let (k3, k4) = rest.split_at_mut(n);
        dynamics.rhs(t, y, k1, &mut work);
        for j in 0..n {
            tmp[j] = y[j] + 0.5 * h * k1[j];
        }
        dynamics.rhs(t + 0.5 * h, &tmp, k2, &mut work);
        for j in 0..n {
            tmp[j] = y[j] + 0.5 * h * k2[j];
        }
        dynamics.rhs(t + 0.5 * h, &tmp, k3, &mut work);
        for j in 0..n {
            tmp[j] = y[j] + h * k3[j];
        }
        dynamics.rhs(t + h, &tmp, k4, &mut work);
        for j in 0..n {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        let t_next = t + h;
        let magnitude = euclidean(y);
        if !(magnitude <= ESCAPE_RADIUS) {
            return Ok(Integration::Diverged { time: t_next, magnitude });
        }
        observer(t_next, y);
    }
    Ok(Integration::Completed)
}
