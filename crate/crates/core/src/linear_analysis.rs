//! Frequency-domain solution of the linear system `M x'' + C x' + K x = f`.
//!
//! Each forcing harmonic is solved independently from
//! `(K - (nΩ)² M + i nΩ C) x̂_n = f̂_n`, where `f̂_n = (a_n - i b_n) / 2` is the
//! complex exponential coefficient of `a_n cos(nΩt) + b_n sin(nΩt)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::forcing::TrigForcing;
use crate::system_model::SystemSpec;
use crate::{Error, Result};

/// A harmonic is near-resonant when `σ_min < SINGULAR_TOL · σ_max`.
pub const SINGULAR_TOL: f64 = 1e-10;
/// Least-squares residual below which a singular harmonic is still solvable.
pub const RANGE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicCoefficient {
    pub n: u32,
    /// `x̂_n` for `n >= 0`; `x̂_{-n}` is its conjugate.
    #[serde(serialize_with = "serialize_complex")]
    pub x: Vec<Complex64>,
    /// The system matrix was (near-)singular at this harmonic.
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicSolution {
    pub period: f64,
    pub coefficients: Vec<HarmonicCoefficient>,
    /// Harmonics where the matrix is singular and `f̂_n` is outside its range.
    pub resonant: Vec<u32>,
}

fn serialize_complex<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// Solve the linear response harmonic by harmonic. The potential is ignored.
pub fn solve_harmonics(spec: &SystemSpec, f: &TrigForcing) -> Result<HarmonicSolution> {
    spec.check_dimensions()?;
    let d = spec.dim();
    if f.dim() != d {
        return Err(Error::Dimension(format!(
            "forcing dimension {} differs from system dimension {d}",
            f.dim()
        )));
    }
    let omega = f.omega();
    let mut coefficients = Vec::with_capacity(f.harmonics().len() + 1);
    let mut resonant = Vec::new();

    let mut rhs_list: Vec<(u32, Vec<Complex64>)> =
        vec![(0, f.mean().iter().map(|&m| Complex64::new(m, 0.0)).collect())];
    for h in f.harmonics() {
        let rhs = h
            .cos
            .iter()
            .zip(&h.sin)
            .map(|(&a, &b)| Complex64::new(0.5 * a, -0.5 * b))
            .collect();
        rhs_list.push((h.n, rhs));
    }

    for (n, rhs) in rhs_list {
        let w = n as f64 * omega;
        let a = DMatrix::from_fn(d, d, |i, j| {
            Complex64::new(
                spec.stiffness[(i, j)] - w * w * spec.mass[(i, j)],
                w * spec.damping[(i, j)],
            )
        });
        let b = DVector::from_vec(rhs);
        let (x, singular, solvable) = solve_one(&a, &b);
        if !solvable {
            resonant.push(n);
        }
        coefficients.push(HarmonicCoefficient { n, x: x.iter().copied().collect(), singular });
    }
    Ok(HarmonicSolution { period: f.period(), coefficients, resonant })
}

/// Returns `(x, singular, solvable)`.
fn solve_one(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> (DVector<Complex64>, bool, bool) {
    let b_norm = b.norm();
    let svd = a.clone().svd(true, true);
    let s_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let s_min = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    let singular = s_min < SINGULAR_TOL * s_max || s_max == 0.0;
    if !singular {
        if let Some(x) = a.clone().lu().solve(b) {
            return (x, false, true);
        }
    }
    if b_norm == 0.0 {
        return (DVector::zeros(b.len()), singular, true);
    }
    let x = svd
        .solve(b, SINGULAR_TOL * s_max)
        .unwrap_or_else(|_| DVector::zeros(b.len()));
    let residual = (a * &x - b).norm();
    (x, true, residual < RANGE_TOL * b_norm)
}

impl HarmonicSolution {
    pub fn is_resonant(&self) -> bool {
        !self.resonant.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.coefficients.first().map_or(0, |c| c.x.len())
    }

    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.period
    }

    /// `Σ_{n∈ℤ} x̂_n (i nΩ)^order e^{i nΩ t}`, summing both `±n` explicitly.
    /// The imaginary part vanishes up to rounding.
    pub fn evaluate_complex(&self, t: f64, order: u32) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        let omega = self.omega();
        for c in &self.coefficients {
            let w = c.n as f64 * omega;
            if c.n == 0 {
                if order == 0 {
                    out.iter_mut().zip(&c.x).for_each(|(o, x)| *o += x);
                }
                continue;
            }
            let pos = Complex64::new(0.0, w).powu(order) * Complex64::from_polar(1.0, w * t);
            let neg = Complex64::new(0.0, -w).powu(order) * Complex64::from_polar(1.0, -w * t);
            for (o, x) in out.iter_mut().zip(&c.x) {
                *o += x * pos + x.conj() * neg;
            }
        }
        out
    }

    /// Real time signal (or its `order`-th derivative).
    pub fn evaluate(&self, t: f64, order: u32) -> Vec<f64> {
        self.evaluate_complex(t, order).iter().map(|z| z.re).collect()
    }
}

/// `‖x‖_{L²(0,T)} = sqrt(T Σ_{n∈ℤ} |x̂_n|²)`.
pub fn parseval_l2(sol: &HarmonicSolution) -> Result<f64> {
    if sol.is_resonant() {
        return Err(Error::Resonant(sol.resonant.clone()));
    }
    let sum: f64 = sol
        .coefficients
        .iter()
        .map(|c| {
            let sq: f64 = c.x.iter().map(|z| z.norm_sqr()).sum();
            if c.n == 0 {
                sq
            } else {
                2.0 * sq
            }
        })
        .sum();
    Ok((sol.period * sum).sqrt())
}

/// Smallest amplitude `A` for which the response to `A·f_unit` has RMS value
/// `‖x‖_{L²(0,T)} / √T` equal to the domain radius.
pub fn linear_escape_amplitude(spec: &SystemSpec, f_unit: &TrigForcing) -> Result<f64> {
    let sol = solve_harmonics(spec, f_unit)?;
    let l2 = parseval_l2(&sol)?;
    if l2 == 0.0 {
        return Err(Error::NoEscapeAmplitude);
    }
    Ok(spec.domain_radius * f_unit.period().sqrt() / l2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system_model::PotentialEnvelope;
    use std::f64::consts::PI;

    fn scalar(m: f64, c: f64, k: f64) -> SystemSpec {
        SystemSpec::scalar(m, c, k, PotentialEnvelope::none())
    }

    fn sin_t() -> TrigForcing {
        TrigForcing::scalar_sine(1.0, 1, 2.0 * PI).unwrap()
    }

    #[test]
    fn undamped_off_resonance_divides_by_three() {
        let sol = solve_harmonics(&scalar(1.0, 0.0, 4.0), &sin_t()).unwrap();
        let c = sol.coefficients.iter().find(|c| c.n == 1).unwrap();
        let f1 = Complex64::new(0.0, -0.5);
        assert!((c.x[0] - f1 / 3.0).norm() < 1e-15);
        assert!(!sol.is_resonant());
    }

    #[test]
    fn exact_resonance_is_flagged() {
        let sol = solve_harmonics(&scalar(1.0, 0.0, 1.0), &sin_t()).unwrap();
        assert_eq!(sol.resonant, vec![1]);
        assert!(matches!(parseval_l2(&sol), Err(Error::Resonant(_))));
    }

    #[test]
    fn damped_unit_system_has_unit_gain() {
        let sol = solve_harmonics(&scalar(1.0, 1.0, 1.0), &sin_t()).unwrap();
        let c = sol.coefficients.iter().find(|c| c.n == 1).unwrap();
        assert!((c.x[0].norm() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn solvable_resonance_is_accepted() {
        // K - Ω²M = diag(0, 3): singular, but forcing only the second
        // coordinate keeps f̂ in the range.
        let spec = SystemSpec::new(
            DMatrix::identity(2, 2),
            DMatrix::zeros(2, 2),
            DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 4.0])),
            PotentialEnvelope::none(),
        )
        .unwrap();
        let f = TrigForcing::new(
            2.0 * PI,
            vec![0.0, 0.0],
            vec![crate::forcing::Harmonic { n: 1, cos: vec![0.0, 0.0], sin: vec![0.0, 1.0] }],
        )
        .unwrap();
        let sol = solve_harmonics(&spec, &f).unwrap();
        assert!(!sol.is_resonant());
        let c = sol.coefficients.iter().find(|c| c.n == 1).unwrap();
        assert!(c.singular);
        assert!((c.x[1] - Complex64::new(0.0, -0.5) / 3.0).norm() < 1e-12);
    }

    #[test]
    fn parseval_examples() {
        let zero = solve_harmonics(&scalar(1.0, 1.0, 1.0), &TrigForcing::zero(1, 2.0 * PI).unwrap()).unwrap();
        assert_eq!(parseval_l2(&zero).unwrap(), 0.0);

        // x(t) = sin t: x̂_1 = -i/2
        let sol = HarmonicSolution {
            period: 2.0 * PI,
            coefficients: vec![HarmonicCoefficient { n: 1, x: vec![Complex64::new(0.0, -0.5)], singular: false }],
            resonant: vec![],
        };
        assert!((parseval_l2(&sol).unwrap() - PI.sqrt()).abs() < 1e-14);

        let a = 0.37;
        let t = 3.3;
        let sol = HarmonicSolution {
            period: t,
            coefficients: vec![HarmonicCoefficient { n: 1, x: vec![Complex64::from_polar(a, 0.4)], singular: false }],
            resonant: vec![],
        };
        assert!((parseval_l2(&sol).unwrap() - (2.0 * t).sqrt() * a).abs() < 1e-14);
    }

    #[test]
    fn escape_amplitude_examples() {
        let spec = scalar(1.0, 1.0, 1.0);
        let a = linear_escape_amplitude(&spec, &sin_t()).unwrap();
        assert!((a - 2f64.sqrt()).abs() < 1e-13);

        let wide = spec.clone().with_domain_radius(2.0);
        assert!((linear_escape_amplitude(&wide, &sin_t()).unwrap() - 2.0 * a).abs() < 1e-13);

        let alpha = 3.5;
        let scaled = scalar(alpha, alpha, alpha);
        assert!((linear_escape_amplitude(&scaled, &sin_t()).unwrap() - alpha * a).abs() < 1e-12);

        let none = TrigForcing::zero(1, 2.0 * PI).unwrap();
        assert!(matches!(linear_escape_amplitude(&spec, &none), Err(Error::NoEscapeAmplitude)));
    }
}
