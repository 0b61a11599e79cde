//! The mechanical system `M x'' + C x' + K x = -grad U(x) + f(t)` and the
//! constants every estimate is built from.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Relative asymmetry tolerated before a matrix is reported as asymmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Eigenvalues above `-PSD_TOL * |lambda|_max` count as zero.
pub const PSD_TOL: f64 = 1e-12;

const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    Hardening,
    Softening,
    None,
}

/// Envelope constants of the nonlinear potential on the validity ball:
/// `grad U(x)·x >= u0 |x|^r` (hardening) or `<= -u0 |x|^r` (softening),
/// and `|grad U(x)| <= grad_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialEnvelope {
    pub kind: PotentialKind,
    pub u0: f64,
    pub r: f64,
    /// Sup of `|grad U|` over the validity ball (`U0`).
    pub grad_bound: f64,
}

impl PotentialEnvelope {
    pub fn hardening(u0: f64, r: f64, grad_bound: f64) -> Self {
        Self { kind: PotentialKind::Hardening, u0, r, grad_bound }
    }

    pub fn softening(u0: f64, r: f64, grad_bound: f64) -> Self {
        Self { kind: PotentialKind::Softening, u0, r, grad_bound }
    }

    /// No nonlinear potential. `grad_bound` is zero, so the gradient term of
    /// the criteria vanishes.
    pub fn none() -> Self {
        Self { kind: PotentialKind::None, u0: 0.0, r: 0.0, grad_bound: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub mass: DMatrix<f64>,
    pub damping: DMatrix<f64>,
    pub stiffness: DMatrix<f64>,
    pub potential: PotentialEnvelope,
    /// Radius of the validity ball centred at the origin.
    pub domain_radius: f64,
}

impl SystemSpec {
    pub fn new(
        mass: DMatrix<f64>,
        damping: DMatrix<f64>,
        stiffness: DMatrix<f64>,
        potential: PotentialEnvelope,
    ) -> Result<Self> {
        let spec = Self { mass, damping, stiffness, potential, domain_radius: 1.0 };
        spec.check_dimensions()?;
        Ok(spec)
    }

    /// One degree of freedom: `m x'' + c x' + k x = ...`.
    pub fn scalar(m: f64, c: f64, k: f64, potential: PotentialEnvelope) -> Self {
        Self {
            mass: DMatrix::from_element(1, 1, m),
            damping: DMatrix::from_element(1, 1, c),
            stiffness: DMatrix::from_element(1, 1, k),
            potential,
            domain_radius: 1.0,
        }
    }

    pub fn with_domain_radius(mut self, radius: f64) -> Self {
        self.domain_radius = radius;
        self
    }

    pub fn dim(&self) -> usize {
        self.mass.nrows()
    }

    pub fn check_dimensions(&self) -> Result<()> {
        let d = self.mass.nrows();
        if d == 0 {
            return Err(Error::Dimension("system dimension must be positive".into()));
        }
        for (name, m) in [("M", &self.mass), ("C", &self.damping), ("K", &self.stiffness)] {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::Dimension(format!(
                    "matrix {name} is {}x{}, expected {d}x{d}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    Asymmetric { matrix: &'static str, relative_asymmetry: f64 },
    NotPositiveDefinite { matrix: &'static str, min_eigenvalue: f64 },
    Indefinite { matrix: &'static str, min_eigenvalue: f64 },
    GrowthExponent { r: f64 },
    NonPositiveEnvelope { name: &'static str, value: f64 },
    NonPositiveRadius { radius: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Asymmetric { matrix, relative_asymmetry } => {
                write!(f, "{matrix} not symmetric (relative asymmetry {relative_asymmetry:e})")
            }
            Violation::NotPositiveDefinite { matrix, min_eigenvalue } => write!(
                f,
                "{matrix} not strictly positive definite (smallest eigenvalue {min_eigenvalue:e})"
            ),
            Violation::Indefinite { matrix, min_eigenvalue } => write!(
                f,
                "{matrix} not positive semi-definite (smallest eigenvalue {min_eigenvalue:e})"
            ),
            Violation::GrowthExponent { r } => {
                write!(f, "growth exponent must exceed 2 (r = {r})")
            }
            Violation::NonPositiveEnvelope { name, value } => {
                write!(f, "envelope constant {name} must be positive ({value})")
            }
            Violation::NonPositiveRadius { radius } => {
                write!(f, "domain radius must be positive ({radius})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Flagged but accepted: currently only a singular mass matrix.
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mass_singular(&self) -> bool {
        !self.warnings.is_empty()
    }
}

/// Check the symmetry and definiteness assumptions of the model.
pub fn validate(spec: &SystemSpec) -> Result<ValidationReport> {
    spec.check_dimensions()?;
    let mut report = ValidationReport::default();

    for (name, m) in [("M", &spec.mass), ("C", &spec.damping), ("K", &spec.stiffness)] {
        let asym = relative_asymmetry(m);
        if asym > SYMMETRY_TOL {
            report.violations.push(Violation::Asymmetric { matrix: name, relative_asymmetry: asym });
        }
    }

    let bounds = eigen_bounds_unclamped(spec)?;
    let check_psd = |name: &'static str, (lo, hi): (f64, f64), report: &mut ValidationReport| {
        if lo < -PSD_TOL * lo.abs().max(hi.abs()) {
            report.violations.push(Violation::Indefinite { matrix: name, min_eigenvalue: lo });
        }
    };
    check_psd("M", bounds[0], &mut report);
    check_psd("K", bounds[2], &mut report);
    let (c_lo, c_hi) = bounds[1];
    if c_lo <= PSD_TOL * c_hi.abs() {
        report.violations.push(Violation::NotPositiveDefinite { matrix: "C", min_eigenvalue: c_lo });
    }
    let (m_lo, m_hi) = bounds[0];
    if m_lo >= -PSD_TOL * m_hi.abs() && m_lo <= PSD_TOL * m_hi.abs() {
        report.warnings.push("mass matrix M is singular".to_string());
    }

    let pot = &spec.potential;
    if pot.kind != PotentialKind::None {
        if !(pot.r > 2.0) {
            report.violations.push(Violation::GrowthExponent { r: pot.r });
        }
        if !(pot.u0 > 0.0) {
            report.violations.push(Violation::NonPositiveEnvelope { name: "u0", value: pot.u0 });
        }
        if !(pot.grad_bound > 0.0) {
            report
                .violations
                .push(Violation::NonPositiveEnvelope { name: "U0", value: pot.grad_bound });
        }
    }
    if !(spec.domain_radius > 0.0) {
        report.violations.push(Violation::NonPositiveRadius { radius: spec.domain_radius });
    }
    Ok(report)
}

/// Extremal eigenvalues of M, C and K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenBounds {
    pub m_min: f64,
    pub m_max: f64,
    pub c_min: f64,
    pub c_max: f64,
    pub k_min: f64,
    pub k_max: f64,
}

/// Extremal eigenvalues with tiny negative values (within the semi-definite
/// tolerance) clamped to zero.
pub fn eigen_bounds(spec: &SystemSpec) -> Result<EigenBounds> {
    spec.check_dimensions()?;
    let [m, c, k] = eigen_bounds_unclamped(spec)?;
    let clamp = |(lo, hi): (f64, f64)| {
        let lo = if lo < 0.0 && lo >= -PSD_TOL * lo.abs().max(hi.abs()) { 0.0 } else { lo };
        (lo, hi)
    };
    let (m_min, m_max) = clamp(m);
    let (c_min, c_max) = clamp(c);
    let (k_min, k_max) = clamp(k);
    Ok(EigenBounds { m_min, m_max, c_min, c_max, k_min, k_max })
}

fn eigen_bounds_unclamped(spec: &SystemSpec) -> Result<[(f64, f64); 3]> {
    let ext = |name: &'static str, a: &DMatrix<f64>| -> Result<(f64, f64)> {
        let eig = symmetric_eigenvalues(a).map_err(|e| match e {
            Error::NoConvergence { sweeps, .. } => Error::NoConvergence { matrix: name, sweeps },
            other => other,
        })?;
        let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok((lo, hi))
    };
    Ok([ext("M", &spec.mass)?, ext("C", &spec.damping)?, ext("K", &spec.stiffness)?])
}

fn relative_asymmetry(a: &DMatrix<f64>) -> f64 {
    let norm = a.norm();
    if norm == 0.0 {
        return 0.0;
    }
    (a - a.transpose()).norm() / norm
}

/// Eigenvalues of the symmetric part of `a` by cyclic Jacobi rotations,
/// in ascending order.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Dimension(format!("matrix is {}x{}, expected square", n, a.ncols())));
    }
    let mut w = (a + a.transpose()) * 0.5;
    let scale = w.norm();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let target = JACOBI_TOL * scale;

    let off_norm = |w: &DMatrix<f64>| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += w[(i, j)] * w[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&w) < target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { matrix: "?", sweeps });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let wkp = w[(k, p)];
                    let wkq = w[(k, q)];
                    w[(k, p)] = c * wkp - s * wkq;
                    w[(k, q)] = s * wkp + c * wkq;
                }
                for k in 0..n {
                    let wpk = w[(p, k)];
                    let wqk = w[(q, k)];
                    w[(p, k)] = c * wpk - s * wqk;
                    w[(q, k)] = s * wpk + c * wqk;
                }
            }
        }
        sweeps += 1;
        converged = off_norm(&w) < target;
    }
    let mut eig: Vec<f64> = (0..n).map(|i| w[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
