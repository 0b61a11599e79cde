//! Non-existence criteria for periodic orbits inside the validity ball and
//! the critical forcing amplitude.
//!
//! Both criteria compare `‖f‖²_{L²(0,T)}` with
//! `U0 ‖f‖_{L¹(0,T)} + ‖M f'' - C f' + K f‖_{L^{r*}(0,T)} · X`, where `X` is the
//! one-period displacement bound of the branch. When the left side wins, no
//! NT-periodic orbit stays inside the ball for any `N >= 1`.

use std::str::FromStr;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{hardening_lr_bound, positive_root, softening_poly, SofteningPoly};
use crate::forcing::{adjoint_operator, derivative_shift, dual_exponent, NormRequest, TrigForcing};
use crate::system_model::{eigen_bounds, validate, PotentialKind, SystemSpec};
use crate::{Error, Result};

/// Smallest amplitude probed by [`critical_amplitude`].
pub const AMPLITUDE_FLOOR: f64 = 1e-9;
/// Largest amplitude probed before giving up.
pub const AMPLITUDE_CAP: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Hardening,
    Softening,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionTerms {
    /// `U0 ‖f‖_{L¹}`
    pub gradient_term: f64,
    /// `‖M f'' - C f' + K f‖_{L^{r*}} · X`
    pub nonlinear_term: f64,
    /// `‖M f'' - C f' + K f‖_{L^{r*}}`
    pub adjoint_dual: f64,
    /// Hardening: `‖f - (M_max/C_min) f'‖_{L^{r*}}`.
    pub shifted_dual: Option<f64>,
    /// Softening: the one-period root `y*`.
    pub softening_root: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub branch: Branch,
    pub periods: u32,
    /// `‖f‖²_{L²(0,NT)}`
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub constant_forcing: bool,
    pub terms: CriterionTerms,
}

impl CriterionResult {
    pub fn gap(&self) -> f64 {
        self.lhs - self.rhs
    }
}

fn check_forcing(spec: &SystemSpec, f: &TrigForcing) -> Result<()> {
    if f.dim() != spec.dim() {
        return Err(Error::Dimension(format!(
            "forcing dimension {} differs from system dimension {}",
            f.dim(),
            spec.dim()
        )));
    }
    Ok(())
}

fn adjoint_dual_norm(spec: &SystemSpec, f: &TrigForcing, periods: u32) -> Result<f64> {
    let g = adjoint_operator(f, &spec.mass, &spec.damping, &spec.stiffness)?;
    g.lp_norm(NormRequest::new(dual_exponent(spec.potential.r)?, periods))
}

/// Hardening criterion with one-period norms.
pub fn hardening_criterion(spec: &SystemSpec, f: &TrigForcing) -> Result<CriterionResult> {
    hardening_criterion_over(spec, f, 1)
}

/// Hardening criterion with every norm taken over `[0, NT]`. Both sides
/// scale linearly in `N`, so the verdict does not depend on `periods`.
pub fn hardening_criterion_over(
    spec: &SystemSpec,
    f: &TrigForcing,
    periods: u32,
) -> Result<CriterionResult> {
    if spec.potential.kind != PotentialKind::Hardening {
        return Err(Error::WrongBranch { expected: "hardening", found: spec.potential.kind });
    }
    check_forcing(spec, f)?;
    let eig = eigen_bounds(spec)?;
    let r_dual = dual_exponent(spec.potential.r)?;
    let lhs = f.lp_norm(NormRequest::new(2.0, periods))?.powi(2);
    let gradient_term = spec.potential.grad_bound * f.lp_norm(NormRequest::new(1.0, periods))?;
    let adjoint_dual = adjoint_dual_norm(spec, f, periods)?;
    let displacement = hardening_lr_bound(spec, f, periods)?;
    let shifted_dual = derivative_shift(f, eig.m_max / eig.c_min).lp_norm(NormRequest::one_period(r_dual))?;
    let nonlinear_term = adjoint_dual * displacement;
    let rhs = gradient_term + nonlinear_term;
    Ok(CriterionResult {
        branch: Branch::Hardening,
        periods,
        lhs,
        rhs,
        satisfied: lhs > rhs,
        constant_forcing: f.is_effectively_constant(),
        terms: CriterionTerms {
            gradient_term,
            nonlinear_term,
            adjoint_dual,
            shifted_dual: Some(shifted_dual),
            softening_root: None,
        },
    })
}

/// Softening criterion with one-period norms.
pub fn softening_criterion(spec: &SystemSpec, f: &TrigForcing) -> Result<CriterionResult> {
    softening_criterion_over(spec, f, 1)
}

pub fn softening_criterion_over(
    spec: &SystemSpec,
    f: &TrigForcing,
    periods: u32,
) -> Result<CriterionResult> {
    if spec.potential.kind != PotentialKind::Softening {
        return Err(Error::WrongBranch { expected: "softening", found: spec.potential.kind });
    }
    check_forcing(spec, f)?;
    let lhs = f.lp_norm(NormRequest::new(2.0, periods))?.powi(2);
    let gradient_term = spec.potential.grad_bound * f.lp_norm(NormRequest::new(1.0, periods))?;
    let adjoint_dual = adjoint_dual_norm(spec, f, periods)?;
    let y_star = positive_root(&softening_poly(spec, f)?);
    let nonlinear_term = adjoint_dual * (periods as f64).powf(1.0 / spec.potential.r) * y_star;
    let rhs = gradient_term + nonlinear_term;
    Ok(CriterionResult {
        branch: Branch::Softening,
        periods,
        lhs,
        rhs,
        satisfied: lhs > rhs,
        constant_forcing: f.is_effectively_constant(),
        terms: CriterionTerms {
            gradient_term,
            nonlinear_term,
            adjoint_dual,
            shifted_dual: None,
            softening_root: Some(y_star),
        },
    })
}

/// Dispatch on the potential kind.
pub fn criterion(spec: &SystemSpec, f: &TrigForcing) -> Result<CriterionResult> {
    match spec.potential.kind {
        PotentialKind::Hardening => hardening_criterion(spec, f),
        PotentialKind::Softening => softening_criterion(spec, f),
        PotentialKind::None => Err(Error::WrongBranch {
            expected: "hardening or softening",
            found: PotentialKind::None,
        }),
    }
}

/// `F(A) = lhs - rhs` of the applicable criterion at forcing `A · f_unit`.
pub fn gap_function(spec: &SystemSpec, f_unit: &TrigForcing, amplitude: f64) -> Result<f64> {
    if !(amplitude > 0.0) {
        return Err(Error::Domain(format!("amplitude must be positive, got {amplitude}")));
    }
    Ok(criterion(spec, &f_unit.scaled(amplitude))?.gap())
}

/// Closed form of the hardening gap function:
/// `F(A) = quadratic·A² − linear·A − power_coef·A^{power}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HardeningGap {
    pub quadratic: f64,
    pub linear: f64,
    pub power_coef: f64,
    pub power: f64,
}

impl HardeningGap {
    pub fn eval(&self, a: f64) -> f64 {
        self.quadratic * a * a - self.linear * a - self.power_coef * a.powf(self.power)
    }
}

/// `F(A)` with the shape norms computed once; every norm is homogeneous of
/// degree one in the amplitude.
#[derive(Debug, Clone, PartialEq)]
pub enum GapCurve {
    Hardening(HardeningGap),
    Softening {
        quadratic: f64,
        linear: f64,
        adjoint_dual: f64,
        /// Polynomial for the unit shape; its constant term scales with `A`.
        unit_poly: SofteningPoly,
    },
}

impl GapCurve {
    pub fn new(spec: &SystemSpec, f_unit: &TrigForcing) -> Result<Self> {
        let base = criterion(spec, f_unit)?;
        let quadratic = base.lhs;
        let linear = base.terms.gradient_term;
        match base.branch {
            Branch::Hardening => {
                let pot = &spec.potential;
                let e = 1.0 / (pot.r - 1.0);
                let shifted = base.terms.shifted_dual.unwrap_or(0.0);
                Ok(GapCurve::Hardening(HardeningGap {
                    quadratic,
                    linear,
                    power_coef: pot.u0.powf(-e) * base.terms.adjoint_dual * shifted.powf(e),
                    power: 1.0 + e,
                }))
            }
            Branch::Softening => Ok(GapCurve::Softening {
                quadratic,
                linear,
                adjoint_dual: base.terms.adjoint_dual,
                unit_poly: softening_poly(spec, f_unit)?,
            }),
        }
    }

    pub fn eval(&self, a: f64) -> f64 {
        match self {
            GapCurve::Hardening(h) => h.eval(a),
            GapCurve::Softening { quadratic, linear, adjoint_dual, unit_poly } => {
                let poly = SofteningPoly { constant: a * unit_poly.constant, ..*unit_poly };
                quadratic * a * a - linear * a - a * adjoint_dual * positive_root(&poly)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalAmplitude {
    pub a_star: f64,
    pub gap_at_root: f64,
    /// Further sign changes of `F` found above `A*` up to the cap.
    pub additional_sign_changes: usize,
}

/// Smallest positive sign change of the gap function.
pub fn critical_amplitude(spec: &SystemSpec, f_unit: &TrigForcing) -> Result<CriticalAmplitude> {
    let curve = GapCurve::new(spec, f_unit)?;
    critical_amplitude_of(&curve)
}

pub fn critical_amplitude_of(curve: &GapCurve) -> Result<CriticalAmplitude> {
    let f = |a: f64| curve.eval(a);
    let mut lo = AMPLITUDE_FLOOR;
    if f(lo) >= 0.0 {
        return Err(Error::Domain(format!(
            "gap function is nonnegative at amplitude {lo:e}; forcing is degenerate"
        )));
    }
    let mut hi = 1.0;
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > AMPLITUDE_CAP {
            return Err(Error::NoRoot { cap: AMPLITUDE_CAP });
        }
    }
    let a_star = crate::numeric::bisect(f, lo, hi, 1e-12 * hi);
    let gap_at_root = f(a_star);
    let below = f(a_star / (1.0 + 1e-6));
    let above = f(a_star * (1.0 + 1e-6));
    if !(below < 0.0 && above > 0.0) {
        return Err(Error::Inconsistent(format!(
            "no sign change around A* = {a_star}: F = ({below:e}, {above:e})"
        )));
    }

    let mut additional_sign_changes = 0;
    let mut prev = above;
    let mut a = a_star * (1.0 + 1e-6);
    let step = 10f64.powf(1.0 / 8.0);
    while a < AMPLITUDE_CAP {
        a *= step;
        let v = f(a);
        if (v > 0.0) != (prev > 0.0) {
            additional_sign_changes += 1;
        }
        prev = v;
    }
    Ok(CriticalAmplitude { a_star, gap_at_root, additional_sign_changes })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeCurve {
    pub samples: Vec<(f64, f64)>,
    pub critical: Option<f64>,
}

/// Sample `F` on increasing amplitudes and attach `A*` when it exists.
pub fn amplitude_curve(
    spec: &SystemSpec,
    f_unit: &TrigForcing,
    amplitudes: &[f64],
) -> Result<AmplitudeCurve> {
    if amplitudes.windows(2).any(|w| !(w[1] > w[0])) || amplitudes.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::Domain("amplitudes must be positive and strictly increasing".into()));
    }
    let curve = GapCurve::new(spec, f_unit)?;
    let samples = amplitudes.iter().map(|&a| (a, curve.eval(a))).collect();
    let critical = critical_amplitude_of(&curve).ok().map(|c| c.a_star);
    Ok(AmplitudeCurve { samples, critical })
}

/// Parameter varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    /// `C = v · C_template`
    DampingScale,
    /// `K = v · K_template`
    StiffnessScale,
    /// Scalar systems only: `C = [v]`.
    Damping,
    /// Scalar systems only: `K = [v]`.
    Stiffness,
    /// Envelope constant `u0`.
    EnvelopeU0,
    /// Gradient bound `U0`.
    GradBound,
    /// Potential strength: `u0 = v` and `U0 = v · U0_template / u0_template`.
    /// For the cubic Duffing family this is the coefficient `δ`.
    Delta,
    /// Fundamental frequency; the period becomes `2π / v`.
    Omega,
    /// Harmonic index of a single-harmonic forcing.
    HarmonicIndex,
}

impl SweepParam {
    pub const ALL: [SweepParam; 9] = [
        SweepParam::DampingScale,
        SweepParam::StiffnessScale,
        SweepParam::Damping,
        SweepParam::Stiffness,
        SweepParam::EnvelopeU0,
        SweepParam::GradBound,
        SweepParam::Delta,
        SweepParam::Omega,
        SweepParam::HarmonicIndex,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::DampingScale => "c-scale",
            SweepParam::StiffnessScale => "k-scale",
            SweepParam::Damping => "c",
            SweepParam::Stiffness => "k",
            SweepParam::EnvelopeU0 => "u0",
            SweepParam::GradBound => "U0",
            SweepParam::Delta => "delta",
            SweepParam::Omega => "omega",
            SweepParam::HarmonicIndex => "n",
        }
    }

    /// Template system and forcing with the parameter set to `value`.
    pub fn apply(
        &self,
        spec: &SystemSpec,
        f_unit: &TrigForcing,
        value: f64,
    ) -> Result<(SystemSpec, TrigForcing)> {
        let mut s = spec.clone();
        let mut f = f_unit.clone();
        let scalar_only = |name: &str| {
            if spec.dim() != 1 {
                Err(Error::Domain(format!(
                    "parameter {name} applies to scalar systems; use {name}-scale"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            SweepParam::DampingScale => s.damping *= value,
            SweepParam::StiffnessScale => s.stiffness *= value,
            SweepParam::Damping => {
                scalar_only("c")?;
                s.damping = DMatrix::from_element(1, 1, value);
            }
            SweepParam::Stiffness => {
                scalar_only("k")?;
                s.stiffness = DMatrix::from_element(1, 1, value);
            }
            SweepParam::EnvelopeU0 => s.potential.u0 = value,
            SweepParam::GradBound => s.potential.grad_bound = value,
            SweepParam::Delta => {
                let ratio = if spec.potential.u0 > 0.0 {
                    spec.potential.grad_bound / spec.potential.u0
                } else {
                    1.0
                };
                s.potential.u0 = value;
                s.potential.grad_bound = value * ratio;
            }
            SweepParam::Omega => {
                if !(value > 0.0) {
                    return Err(Error::Domain(format!("omega must be positive, got {value}")));
                }
                f = TrigForcing::new(
                    2.0 * std::f64::consts::PI / value,
                    f.mean().to_vec(),
                    f.harmonics().to_vec(),
                )?;
            }
            SweepParam::HarmonicIndex => {
                let n = value.round();
                if !(n >= 1.0) || (value - n).abs() > 1e-9 {
                    return Err(Error::Domain(format!("harmonic index must be a positive integer, got {value}")));
                }
                let [h] = f.harmonics() else {
                    return Err(Error::Domain("parameter n needs a single-harmonic forcing".into()));
                };
                let mut h = h.clone();
                h.n = n as u32;
                f = TrigForcing::new(f.period(), f.mean().to_vec(), vec![h])?;
            }
        }
        Ok((s, f))
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = SweepParam::ALL.iter().map(|p| p.name()).collect();
                Error::Domain(format!("unknown sweep parameter {s:?}; expected one of {names:?}"))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Ok,
    NoRoot,
    Invalid,
}

impl SweepStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepStatus::Ok => "ok",
            SweepStatus::NoRoot => "no_root",
            SweepStatus::Invalid => "invalid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub a_star: Option<f64>,
    pub status: SweepStatus,
    pub message: Option<String>,
}

/// Critical amplitude at every grid value. Rows come back in grid order;
/// per-point failures are recorded inline.
pub fn sweep(
    spec: &SystemSpec,
    f_unit: &TrigForcing,
    param: SweepParam,
    grid: &[f64],
) -> Result<Vec<SweepRow>> {
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("sweep grid must be strictly increasing".into()));
    }
    Ok(grid.par_iter().map(|&value| sweep_point(spec, f_unit, param, value)).collect())
}

fn sweep_point(spec: &SystemSpec, f_unit: &TrigForcing, param: SweepParam, value: f64) -> SweepRow {
    let invalid = |message: String| SweepRow {
        value,
        a_star: None,
        status: SweepStatus::Invalid,
        message: Some(message),
    };
    let (s, f) = match param.apply(spec, f_unit, value) {
        Ok(pair) => pair,
        Err(e) => return invalid(e.to_string()),
    };
    match validate(&s) {
        Ok(report) if !report.is_ok() => {
            let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return invalid(msgs.join("; "));
        }
        Err(e) => return invalid(e.to_string()),
        Ok(_) => {}
    }
    match critical_amplitude(&s, &f) {
        Ok(c) => SweepRow { value, a_star: Some(c.a_star), status: SweepStatus::Ok, message: None },
        Err(Error::NoRoot { .. }) => SweepRow {
            value,
            a_star: None,
            status: SweepStatus::NoRoot,
            message: None,
        },
        Err(e) => invalid(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{duffing_system, DuffingParams};
    use std::f64::consts::PI;

    fn hard() -> (SystemSpec, TrigForcing) {
        let p = DuffingParams::hardening();
        (duffing_system(&p), p.unit_forcing())
    }

    fn soft() -> (SystemSpec, TrigForcing) {
        let p = DuffingParams::softening();
        (duffing_system(&p), p.unit_forcing())
    }

    #[test]
    fn hardening_lhs_is_pi_over_omega_a_squared() {
        let (spec, f) = hard();
        let a = 1.3;
        let res = hardening_criterion(&spec, &f.scaled(a)).unwrap();
        assert!((res.lhs - PI * a * a).abs() < 1e-12 * res.lhs);
        assert!((res.terms.gradient_term - 4.0 * a).abs() < 1e-10);
    }

    #[test]
    fn small_amplitude_unsatisfied_large_satisfied() {
        for (spec, f) in [hard(), soft()] {
            assert!(!criterion(&spec, &f.scaled(1e-3)).unwrap().satisfied);
            assert!(criterion(&spec, &f.scaled(1e3)).unwrap().satisfied);
        }
    }

    #[test]
    fn gap_leading_coefficient() {
        let (spec, f) = hard();
        let a = 1e6;
        let ratio = gap_function(&spec, &f, a).unwrap() / (a * a);
        // F/A² = π/ω - O(A^{-2/3})
        assert!((ratio - PI).abs() < 1e-2);
    }

    #[test]
    fn gap_power_term_scales_by_two_to_four_thirds() {
        let (spec, f) = hard();
        let GapCurve::Hardening(h) = GapCurve::new(&spec, &f).unwrap() else { panic!() };
        let a = 0.7;
        let term = |a: f64| {
            let r = hardening_criterion(&spec, &f.scaled(a)).unwrap();
            r.terms.nonlinear_term
        };
        assert!((term(2.0 * a) / term(a) - 2f64.powf(4.0 / 3.0)).abs() < 1e-10);
        assert!((h.power - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn criterion_is_n_independent() {
        for (spec, f) in [hard(), soft()] {
            for a in [0.5, 1.7, 3.0] {
                let g = f.scaled(a);
                let base = if spec.potential.kind == PotentialKind::Hardening {
                    hardening_criterion_over(&spec, &g, 1).unwrap()
                } else {
                    softening_criterion_over(&spec, &g, 1).unwrap()
                };
                for n in [2, 4] {
                    let r = if spec.potential.kind == PotentialKind::Hardening {
                        hardening_criterion_over(&spec, &g, n).unwrap()
                    } else {
                        softening_criterion_over(&spec, &g, n).unwrap()
                    };
                    assert_eq!(r.satisfied, base.satisfied);
                    let scaled_gap = r.gap() / n as f64;
                    assert!(
                        (scaled_gap - base.gap()).abs() <= 1e-12 * base.lhs.max(base.rhs),
                        "N = {n}: {scaled_gap} vs {}",
                        base.gap()
                    );
                }
            }
        }
    }

    #[test]
    fn critical_amplitude_is_a_sign_change() {
        for (spec, f) in [hard(), soft()] {
            let c = critical_amplitude(&spec, &f).unwrap();
            assert!(c.gap_at_root.abs() <= 1e-10 * c.a_star.powi(2).max(1.0));
            assert!(gap_function(&spec, &f, c.a_star * (1.0 - 1e-4)).unwrap() < 0.0);
            assert!(gap_function(&spec, &f, c.a_star * (1.0 + 1e-4)).unwrap() > 0.0);
            assert_eq!(c.additional_sign_changes, 0);
        }
    }

    #[test]
    fn wrong_branch_for_linear() {
        let mut spec = hard().0;
        spec.potential = crate::system_model::PotentialEnvelope::none();
        assert!(matches!(criterion(&spec, &hard().1), Err(Error::WrongBranch { .. })));
        assert!(critical_amplitude(&spec, &hard().1).is_err());
    }

    #[test]
    fn sweep_edge_cases() {
        let (spec, f) = hard();
        assert!(sweep(&spec, &f, SweepParam::Damping, &[]).unwrap().is_empty());
        let one = sweep(&spec, &f, SweepParam::Damping, &[0.1]).unwrap();
        let direct = critical_amplitude(&spec, &f).unwrap();
        assert_eq!(one[0].a_star, Some(direct.a_star));
        assert!(sweep(&spec, &f, SweepParam::Damping, &[0.2, 0.1]).is_err());
        let bad = sweep(&spec, &f, SweepParam::Damping, &[-1.0, 0.1]).unwrap();
        assert_eq!(bad[0].status, SweepStatus::Invalid);
        assert_eq!(bad[1].status, SweepStatus::Ok);
    }

    #[test]
    fn sweep_param_names_round_trip() {
        for p in SweepParam::ALL {
            assert_eq!(p.name().parse::<SweepParam>().unwrap(), p);
        }
        assert!("zeta".parse::<SweepParam>().is_err());
    }

    #[test]
    fn harmonic_index_and_omega_params() {
        let (spec, f) = hard();
        let (_, g) = SweepParam::HarmonicIndex.apply(&spec, &f, 3.0).unwrap();
        assert_eq!(g.harmonics()[0].n, 3);
        assert!(SweepParam::HarmonicIndex.apply(&spec, &f, 2.5).is_err());
        let (_, g) = SweepParam::Omega.apply(&spec, &f, 2.0).unwrap();
        assert!((g.period() - PI).abs() < 1e-15);
        let (s, _) = SweepParam::Delta.apply(&spec, &f, 0.5).unwrap();
        assert_eq!((s.potential.u0, s.potential.grad_bound), (0.5, 0.5));
    }

    #[test]
    fn amplitude_curve_samples() {
        let (spec, f) = hard();
        let curve = amplitude_curve(&spec, &f, &[0.5, 1.0, 4.0]).unwrap();
        assert_eq!(curve.samples.len(), 3);
        assert!(curve.samples[0].1 < 0.0 && curve.samples[2].1 > 0.0);
        let a = curve.critical.unwrap();
        assert!(a > 1.0 && a < 4.0);
        assert!(amplitude_curve(&spec, &f, &[1.0, 1.0]).is_err());
    }
}
