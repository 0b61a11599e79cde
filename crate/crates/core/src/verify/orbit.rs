//! Periodic orbit search: Poincaré iteration of the `NT` map, polished by
//! Newton shooting with a finite-difference Jacobian.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::integrator::{integrate, Dynamics, Integration};
use crate::numeric::euclidean;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitOptions {
    pub steps_per_period: usize,
    pub max_iterations: usize,
    /// Poincaré stops when `|z_{k+1} - z_k| < tol · (1 + |z|)`.
    pub poincare_tol: f64,
    pub newton_iterations: usize,
    /// Newton stops when `|Φ(z) - z| < tol · (1 + |z|)`.
    pub newton_tol: f64,
    pub initial_state: Option<Vec<f64>>,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        Self {
            steps_per_period: 2048,
            max_iterations: 500,
            poincare_tol: 1e-10,
            newton_iterations: 12,
            newton_tol: 1e-11,
            initial_state: None,
        }
    }
}

/// A converged orbit sampled on a uniform grid over `[0, NT]`, endpoints
/// included.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSample {
    pub periods: u32,
    /// `NT`
    pub duration: f64,
    pub dt: f64,
    pub times: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub poincare_iterations: usize,
    pub newton_steps: usize,
    /// `|Φ(z) - z|` at the returned initial state.
    pub shooting_residual: f64,
    /// `|state(NT) - state(0)|` of the stored samples.
    pub closure_residual: f64,
    /// Max over the grid of `|M x'' + C x' + K x + ∇U - f|`, with `x''` from
    /// a periodic fourth-order finite difference of the velocities.
    pub dynamics_residual: f64,
    /// `‖f‖_∞` on the grid, the scale for `dynamics_residual`.
    pub forcing_sup: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitOutcome {
    Converged(OrbitSample),
    Escaped { time: f64, magnitude: f64 },
    NotFound { iterations: usize, residual: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Position,
    Velocity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasuredNorm {
    pub value: f64,
    /// Relative change against the same rule on every other sample.
    pub refinement_change: f64,
}

enum Flow {
    Ok(Vec<f64>),
    Escaped { time: f64, magnitude: f64 },
}

fn flow(dynamics: &Dynamics<'_>, z: &[f64], duration: f64, dt: f64) -> Result<Flow> {
    let mut y = z.to_vec();
    match integrate(dynamics, 0.0, &mut y, duration, dt, |_, _| {})? {
        Integration::Completed => Ok(Flow::Ok(y)),
        Integration::Diverged { time, magnitude } => Ok(Flow::Escaped { time, magnitude }),
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Search for an `NT`-periodic orbit.
pub fn find_limit_cycle(dynamics: &Dynamics<'_>, periods: u32, opts: &OrbitOptions) -> Result<OrbitOutcome> {
    if periods == 0 {
        return Err(Error::Domain("periods must be at least 1".into()));
    }
    if opts.steps_per_period < 4 || !opts.steps_per_period.is_multiple_of(2) {
        return Err(Error::Domain("steps_per_period must be even and at least 4".into()));
    }
    let n = 2 * dynamics.dim();
    let duration = periods as f64 * dynamics.period();
    let dt = dynamics.period() / opts.steps_per_period as f64;
    let mut z = match &opts.initial_state {
        Some(z0) if z0.len() == n => z0.clone(),
        Some(z0) => {
            return Err(Error::Dimension(format!("initial state length {}, expected {n}", z0.len())))
        }
        None => vec![0.0; n],
    };

    let mut iterations = 0;
    for _ in 0..opts.max_iterations {
        iterations += 1;
        let next = match flow(dynamics, &z, duration, dt)? {
            Flow::Ok(y) => y,
            Flow::Escaped { time, magnitude } => return Ok(OrbitOutcome::Escaped { time, magnitude }),
        };
        let change = distance(&next, &z);
        z = next;
        if change < opts.poincare_tol * (1.0 + euclidean(&z)) {
            break;
        }
        // Close enough for Newton to take over.
        if iterations >= 20 && change < 1e-6 * (1.0 + euclidean(&z)) {
            break;
        }
    }

    let residual_at = |z: &[f64]| -> Result<Option<Vec<f64>>> {
        Ok(match flow(dynamics, z, duration, dt)? {
            Flow::Ok(y) => Some(y.iter().zip(z).map(|(a, b)| a - b).collect()),
            Flow::Escaped { .. } => None,
        })
    };

    let mut newton_steps = 0;
    let mut g = match residual_at(&z)? {
        Some(g) => g,
        None => return Ok(OrbitOutcome::NotFound { iterations, residual: f64::INFINITY }),
    };
    let poincare_z = z.clone();
    let poincare_g = g.clone();
    for _ in 0..opts.newton_iterations {
        if euclidean(&g) < opts.newton_tol * (1.0 + euclidean(&z)) {
            break;
        }
        let mut jac = DMatrix::<f64>::zeros(n, n);
        let mut ok = true;
        for j in 0..n {
            let h = 1e-7 * (1.0 + z[j].abs());
            let mut zp = z.clone();
            zp[j] += h;
            match residual_at(&zp)? {
                Some(gp) => {
                    for i in 0..n {
                        jac[(i, j)] = (gp[i] - g[i]) / h;
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            break;
        }
        let Some(delta) = jac.lu().solve(&(-DVector::from_column_slice(&g))) else {
            break;
        };
        let candidate: Vec<f64> = z.iter().zip(delta.iter()).map(|(a, d)| a + d).collect();
        match residual_at(&candidate)? {
            Some(gc) if euclidean(&gc) < euclidean(&g) => {
                z = candidate;
                g = gc;
                newton_steps += 1;
            }
            _ => break,
        }
    }
    if euclidean(&poincare_g) < euclidean(&g) {
        z = poincare_z;
        g = poincare_g;
    }

    let residual = euclidean(&g);
    let accept = opts.poincare_tol.max(opts.newton_tol) * (1.0 + euclidean(&z));
    if !(residual < accept) {
        return Ok(OrbitOutcome::NotFound { iterations, residual });
    }

    let d = dynamics.dim();
    let mut times = Vec::new();
    let mut positions = Vec::new();
    let mut velocities = Vec::new();
    let mut y = z.clone();
    let run = integrate(dynamics, 0.0, &mut y, duration, dt, |t, s| {
        times.push(t);
        positions.push(s[..d].to_vec());
        velocities.push(s[d..].to_vec());
    })?;
    if let Integration::Diverged { time, magnitude } = run {
        return Ok(OrbitOutcome::Escaped { time, magnitude });
    }
    let mut sample = OrbitSample {
        periods,
        duration,
        dt,
        times,
        positions,
        velocities,
        poincare_iterations: iterations,
        newton_steps,
        shooting_residual: residual,
        closure_residual: 0.0,
        dynamics_residual: 0.0,
        forcing_sup: 0.0,
    };
    let last = sample.times.len() - 1;
    sample.closure_residual = distance(&sample.positions[last], &sample.positions[0])
        .hypot(distance(&sample.velocities[last], &sample.velocities[0]));
    sample.dynamics_residual = dynamics_residual(dynamics, &sample);
    sample.forcing_sup = sample
        .times
        .iter()
        .map(|&t| dynamics.forcing().magnitude(t))
        .fold(0.0, f64::max);
    Ok(OrbitOutcome::Converged(sample))
}

fn dynamics_residual(dynamics: &Dynamics<'_>, sample: &OrbitSample) -> f64 {
    let m = sample.times.len() - 1;
    let d = dynamics.dim();
    let h = sample.dt;
    let v = &sample.velocities;
    let at = |i: isize| &v[i.rem_euclid(m as isize) as usize];
    let mut worst: f64 = 0.0;
    for (i, (&t, x)) in sample.times.iter().zip(&sample.positions).enumerate().take(m) {
        let ii = i as isize;
        let fd: Vec<f64> = (0..d)
            .map(|k| (-at(ii + 2)[k] + 8.0 * at(ii + 1)[k] - 8.0 * at(ii - 1)[k] + at(ii - 2)[k]) / (12.0 * h))
            .collect();
        let r = dynamics.equation_residual(t, x, &v[i], &fd);
        worst = worst.max(euclidean(&r));
    }
    worst
}

impl OrbitSample {
    /// Closure within `1e-8 (1 + max |state|)` and equation residual within
    /// `1e-6 (1 + ‖f‖_∞)`.
    pub fn residuals_ok(&self) -> bool {
        let peak = self
            .positions
            .iter()
            .zip(&self.velocities)
            .map(|(x, v)| euclidean(x).hypot(euclidean(v)))
            .fold(0.0, f64::max);
        self.closure_residual <= 1e-8 * (1.0 + peak)
            && self.dynamics_residual <= 1e-6 * (1.0 + self.forcing_sup)
    }

    pub fn dim(&self) -> usize {
        self.positions.first().map_or(0, Vec::len)
    }

    pub fn initial_position_magnitude(&self) -> f64 {
        euclidean(&self.positions[0])
    }

    fn magnitudes(&self, q: Quantity) -> Vec<f64> {
        let src = match q {
            Quantity::Position => &self.positions,
            Quantity::Velocity => &self.velocities,
        };
        src.iter().map(|s| euclidean(s)).collect()
    }

    /// `‖q‖_{L^p(0,NT)}` by composite Simpson; `p = ∞` takes the sample
    /// maximum refined by a parabola through the neighbours.
    pub fn lp_norm(&self, q: Quantity, p: f64) -> Result<MeasuredNorm> {
        if !(p >= 1.0) {
            return Err(Error::Domain(format!("L^p norm needs p >= 1, got {p}")));
        }
        let mags = self.magnitudes(q);
        let m = mags.len() - 1;
        if p.is_infinite() {
            let (i, &peak) = mags[..m]
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("nonempty sample");
            let l = mags[(i + m - 1) % m];
            let r = mags[(i + 1) % m];
            let curv = l - 2.0 * peak + r;
            let refined = if curv < 0.0 { peak - (r - l).powi(2) / (8.0 * curv) } else { peak };
            let change = (refined - peak) / refined.max(1e-300);
            return Ok(MeasuredNorm { value: refined, refinement_change: change });
        }
        let vals: Vec<f64> = mags.iter().map(|x| x.powf(p)).collect();
        let fine = simpson(&vals, self.dt);
        let coarse_vals: Vec<f64> = vals.iter().step_by(2).copied().collect();
        let coarse = if coarse_vals.len() % 2 == 1 { simpson(&coarse_vals, 2.0 * self.dt) } else { fine };
        let value = fine.powf(1.0 / p);
        let change = if fine > 0.0 { (fine - coarse).abs() / fine } else { 0.0 };
        Ok(MeasuredNorm { value, refinement_change: change })
    }
}

fn simpson(vals: &[f64], h: f64) -> f64 {
    let m = vals.len() - 1;
    debug_assert!(m.is_multiple_of(2));
    let mut s = vals[0] + vals[m];
    for (i, v) in vals.iter().enumerate().take(m).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}
