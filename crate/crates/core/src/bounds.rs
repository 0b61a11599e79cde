//! A-priori estimates on NT-periodic orbits.
//!
//! All estimates are expressed through one-period norms of the forcing and
//! carry the interval multiplier `N` explicitly:
//!
//! | estimate | value |
//! |---|---|
//! | velocity, basic | `√N / C_min · ‖f̃‖_{L²(0,T)}` |
//! | displacement, hardening | `N^{1/r} u0^{-1/(r-1)} ‖f - (M_max/C_min) f'‖_{L^{r*}}^{1/(r-1)}` |
//! | displacement, softening | `N^{1/r} y*`, `y*` the positive root of [`SofteningPoly`] |
//! | velocity, improved hardening | `u0^{-1/(2(r-1))} √(N/C_min) ‖f'‖^{1/2}_{L^{r*}} ‖f - (M_max/C_min) f'‖^{1/(2(r-1))}_{L^{r*}}` |
//! | velocity, improved softening | `√(N/C_min) ‖f'‖^{1/2}_{L^{r*}} √y*` |
//! | sup norm | `|x0| + N √T / C_min · ‖f̃‖_{L²(0,T)}` |

use serde::Serialize;

use crate::forcing::{derivative_shift, dual_exponent, NormRequest, TrigForcing};
use crate::numeric::bisect;
use crate::system_model::{eigen_bounds, EigenBounds, PotentialKind, SystemSpec};
use crate::{Error, Result};

/// `P(y) = leading·y^s − linear·y − constant` on `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SofteningPoly {
    pub leading: f64,
    pub linear: f64,
    pub constant: f64,
    pub exponent: f64,
}

impl SofteningPoly {
    pub fn new(leading: f64, linear: f64, constant: f64, exponent: f64) -> Result<Self> {
        if !(leading > 0.0) || !(linear >= 0.0) || !(constant >= 0.0) || !(exponent > 1.0) {
            return Err(Error::Domain(format!(
                "softening polynomial needs A > 0, B >= 0, C >= 0, s > 1; got \
                 ({leading}, {linear}, {constant}, {exponent})"
            )));
        }
        Ok(Self { leading, linear, constant, exponent })
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.leading * y.powf(self.exponent) - self.linear * y - self.constant
    }

    pub fn derivative(&self, y: f64) -> f64 {
        self.exponent * self.leading * y.powf(self.exponent - 1.0) - self.linear
    }

    pub fn second_derivative(&self, y: f64) -> f64 {
        let s = self.exponent;
        s * (s - 1.0) * self.leading * y.powf(s - 2.0)
    }

    /// Sum of the magnitudes of the three terms; the natural scale of `P(y)`.
    pub fn magnitude(&self, y: f64) -> f64 {
        self.leading * y.powf(self.exponent) + self.linear * y + self.constant
    }
}

/// The unique positive zero `ȳ = (B / (sA))^{1/(s-1)}` of `P'`; zero when
/// `B = 0`.
pub fn stationary_point(p: &SofteningPoly) -> f64 {
    if p.linear == 0.0 {
        return 0.0;
    }
    (p.linear / (p.exponent * p.leading)).powf(1.0 / (p.exponent - 1.0))
}

/// Positive zero of the parabola with crest at `ȳ` that minorizes `P` on
/// `[ȳ, ∞)`: `y⁺ = ȳ + sqrt(2 |P(ȳ)| / P''(ȳ))`. Requires `s >= 2` and
/// `B > 0`.
pub fn parabolic_root_bound(p: &SofteningPoly) -> Result<f64> {
    if p.exponent < 2.0 {
        return Err(Error::Domain(format!(
            "parabolic root bound needs s >= 2, got {}",
            p.exponent
        )));
    }
    if p.linear == 0.0 {
        return Err(Error::Domain("parabolic root bound needs B > 0".into()));
    }
    let y_bar = stationary_point(p);
    let p_bar = p.eval(y_bar);
    if p_bar > 0.0 {
        return Err(Error::Inconsistent(format!(
            "P(ȳ) = {p_bar:e} is positive at the stationary point"
        )));
    }
    Ok(y_bar + (2.0 * p_bar.abs() / p.second_derivative(y_bar)).sqrt())
}

/// Classical bound `max{1, (B + C) / A}` on the positive root.
pub fn lagrange_root_bound(p: &SofteningPoly) -> f64 {
    ((p.linear + p.constant) / p.leading).max(1.0)
}

/// The unique positive root `y*` (bisection on `[ȳ, y⁺]`, then Newton
/// polish inside the bracket).
pub fn positive_root(p: &SofteningPoly) -> f64 {
    let s = p.exponent;
    if p.constant == 0.0 {
        return if p.linear == 0.0 { 0.0 } else { (p.linear / p.leading).powf(1.0 / (s - 1.0)) };
    }
    let lo = stationary_point(p);
    let mut hi = match parabolic_root_bound(p) {
        Ok(b) => b,
        Err(_) => lagrange_root_bound(p).max(lo),
    };
    // the parabola can undershoot by rounding only; the Lagrange start may
    // undershoot for s < 2
    let mut guard = 0;
    while p.eval(hi) < 0.0 && guard < 2000 {
        hi = if hi > 0.0 { 2.0 * hi } else { 1.0 };
        guard += 1;
    }
    let mut y = bisect(|y| p.eval(y), lo, hi, 1e-13 * hi);
    let (mut a, mut b) = (lo, hi);
    for _ in 0..3 {
        let fy = p.eval(y);
        if fy == 0.0 {
            break;
        }
        if fy < 0.0 {
            a = y;
        } else {
            b = y;
        }
        let step = fy / p.derivative(y);
        let next = y - step;
        if !(next >= a && next <= b) {
            break;
        }
        if p.eval(next).abs() > fy.abs() {
            break;
        }
        y = next;
    }
    y
}

fn eigen(spec: &SystemSpec) -> Result<EigenBounds> {
    let eig = eigen_bounds(spec)?;
    if !(eig.c_min > 0.0) {
        return Err(Error::Domain(format!(
            "damping must be positive definite (C_min = {})",
            eig.c_min
        )));
    }
    Ok(eig)
}

fn check_forcing(spec: &SystemSpec, f: &TrigForcing, periods: u32) -> Result<()> {
    if f.dim() != spec.dim() {
        return Err(Error::Dimension(format!(
            "forcing dimension {} differs from system dimension {}",
            f.dim(),
            spec.dim()
        )));
    }
    if periods == 0 {
        return Err(Error::Domain("interval multiplier N must be >= 1".into()));
    }
    Ok(())
}

fn require(spec: &SystemSpec, kind: PotentialKind, name: &'static str) -> Result<()> {
    if spec.potential.kind != kind {
        return Err(Error::WrongBranch { expected: name, found: spec.potential.kind });
    }
    Ok(())
}

fn dual_of(spec: &SystemSpec) -> Result<f64> {
    dual_exponent(spec.potential.r)
}

/// `‖f - (M_max / C_min) f'‖_{L^{r*}(0,T)}`.
fn shifted_dual_norm(spec: &SystemSpec, eig: &EigenBounds, f: &TrigForcing) -> Result<f64> {
    let g = derivative_shift(f, eig.m_max / eig.c_min);
    g.lp_norm(NormRequest::one_period(dual_of(spec)?))
}

fn derivative_dual_norm(spec: &SystemSpec, f: &TrigForcing) -> Result<f64> {
    f.derivative(1).lp_norm(NormRequest::one_period(dual_of(spec)?))
}

/// Basic velocity bound `‖x_p'‖_{L²(0,NT)} ≤ √N / C_min · ‖f̃‖_{L²(0,T)}`.
/// Constant forcing gives 0.
pub fn velocity_l2_bound(spec: &SystemSpec, f: &TrigForcing, periods: u32) -> Result<f64> {
    check_forcing(spec, f, periods)?;
    let eig = eigen(spec)?;
    if f.is_effectively_constant() {
        return Ok(0.0);
    }
    let mf = f.mean_free().lp_norm(NormRequest::one_period(2.0))?;
    Ok((periods as f64).sqrt() / eig.c_min * mf)
}

/// Displacement bound `‖x_p‖_{L^r(0,NT)}` for a hardening potential.
pub fn hardening_lr_bound(spec: &SystemSpec, f: &TrigForcing, periods: u32) -> Result<f64> {
    require(spec, PotentialKind::Hardening, "hardening")?;
    check_forcing(spec, f, periods)?;
    let eig = eigen(spec)?;
    let pot = &spec.potential;
    let shifted = shifted_dual_norm(spec, &eig, f)?;
    let e = 1.0 / (pot.r - 1.0);
    Ok((periods as f64).powf(1.0 / pot.r) * pot.u0.powf(-e) * shifted.powf(e))
}

/// One-period softening polynomial
/// `u0 y^{r-1} - K_max T^{(r-2)/r} y - ‖f‖_{L^{r*}(0,T)}`.
pub fn softening_poly(spec: &SystemSpec, f: &TrigForcing) -> Result<SofteningPoly> {
    require(spec, PotentialKind::Softening, "softening")?;
    check_forcing(spec, f, 1)?;
    let eig = eigen_bounds(spec)?;
    let pot = &spec.potential;
    let forcing_dual = f.lp_norm(NormRequest::one_period(dual_of(spec)?))?;
    SofteningPoly::new(
        pot.u0,
        eig.k_max * f.period().powf((pot.r - 2.0) / pot.r),
        forcing_dual,
        pot.r - 1.0,
    )
}

/// Displacement bound `N^{1/r} y*` for a softening potential.
pub fn softening_lr_bound(spec: &SystemSpec, f: &TrigForcing, periods: u32) -> Result<f64> {
    check_forcing(spec, f, periods)?;
    let poly = softening_poly(spec, f)?;
    Ok((periods as f64).powf(1.0 / spec.potential.r) * positive_root(&poly))
}

/// Displacement bound for whichever branch the potential belongs to.
pub fn displacement_lr_bound(spec: &SystemSpec, f: &TrigForcing, periods: u32) -> Result<f64> {
    match spec.potential.kind {
        PotentialKind::Hardening => hardening_lr_bound(spec, f, periods),
        PotentialKind::Softening => softening_lr_bound(spec, f, periods),
        PotentialKind::None => Err(Error::WrongBranch {
            expected: "hardening or softening",
            found: PotentialKind::None,
        }),
    }
}

/// Velocity bound obtained from the displacement bound; grows like
/// `A^{r/(2(r-1))}` under `f -> A f`.
pub fn improved_velocity_bound(spec: &SystemSpec, f: &TrigForcing, periods: u32) -> Result<f64> {
    check_forcing(spec, f, periods)?;
    let eig = eigen(spec)?;
    let pot = &spec.potential;
    let n = periods as f64;
    let deriv = derivative_dual_norm(spec, f)?;
    match pot.kind {
        PotentialKind::Hardening => {
            let shifted = shifted_dual_norm(spec, &eig, f)?;
            let e = 1.0 / (2.0 * (pot.r - 1.0));
            Ok(pot.u0.powf(-e) * (n / eig.c_min).sqrt() * deriv.sqrt() * shifted.powf(e))
        }
        PotentialKind::Softening => {
            // N^{1/(2r*)} / √C_min · ‖f'‖^{1/2} · √(N^{1/r} y*) with the
            // one-period root y*; the powers of N combine to √N.
            let y_star = positive_root(&softening_poly(spec, f)?);
            Ok((n / eig.c_min).sqrt() * deriv.sqrt() * y_star.sqrt())
        }
        PotentialKind::None => Err(Error::WrongBranch {
            expected: "hardening or softening",
            found: PotentialKind::None,
        }),
    }
}

/// `‖x_p‖_{L^∞(0,NT)} ≤ |x0| + N √T / C_min · ‖f̃‖_{L²(0,T)}`.
pub fn linfty_orbit_bound(
    spec: &SystemSpec,
    f: &TrigForcing,
    periods: u32,
    x0_magnitude: f64,
) -> Result<f64> {
    check_forcing(spec, f, periods)?;
    if !(x0_magnitude >= 0.0) {
        return Err(Error::Domain(format!("|x0| must be nonnegative, got {x0_magnitude}")));
    }
    let eig = eigen(spec)?;
    let mf = f.mean_free().lp_norm(NormRequest::one_period(2.0))?;
    Ok(x0_magnitude + periods as f64 * f.period().sqrt() / eig.c_min * mf)
}

/// Norms of the forcing that enter the estimates, one period each.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntermediateNorms {
    /// `‖f̃‖_{L²(0,T)}`
    pub mean_free_l2: f64,
    /// `‖f'‖_{L^{r*}(0,T)}`
    pub derivative_dual: Option<f64>,
    /// `‖f - (M_max/C_min) f'‖_{L^{r*}(0,T)}`
    pub shifted_dual: Option<f64>,
    /// `‖f‖_{L^{r*}(0,T)}`
    pub forcing_dual: Option<f64>,
    pub softening_poly: Option<SofteningPoly>,
    /// One-period root `y*`.
    pub softening_root: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub periods: u32,
    pub branch: PotentialKind,
    pub eigen: EigenBounds,
    /// Mean-free L² velocity bound.
    pub velocity_l2_basic: f64,
    /// Branch-appropriate `‖x_p‖_{L^r(0,NT)}` bound.
    pub displacement_lr: Option<f64>,
    /// Displacement-based velocity bound.
    pub velocity_l2_improved: Option<f64>,
    pub velocity_l2_best: f64,
    pub x0_magnitude: f64,
    pub linfty_orbit: f64,
    /// The forcing is constant; the velocity bounds degenerate to zero.
    pub constant_forcing: bool,
    pub norms: IntermediateNorms,
}

/// Every applicable estimate for `N = periods`.
pub fn bound_report(
    spec: &SystemSpec,
    f: &TrigForcing,
    periods: u32,
    x0_magnitude: f64,
) -> Result<BoundReport> {
    check_forcing(spec, f, periods)?;
    let eig = eigen(spec)?;
    let kind = spec.potential.kind;
    let nonlinear = kind != PotentialKind::None;

    let velocity_l2_basic = velocity_l2_bound(spec, f, periods)?;
    let displacement_lr =
        if nonlinear { Some(displacement_lr_bound(spec, f, periods)?) } else { None };
    let velocity_l2_improved =
        if nonlinear { Some(improved_velocity_bound(spec, f, periods)?) } else { None };
    let velocity_l2_best = velocity_l2_improved.map_or(velocity_l2_basic, |v| v.min(velocity_l2_basic));

    let (softening_poly, softening_root) = if kind == PotentialKind::Softening {
        let p = softening_poly(spec, f)?;
        (Some(p), Some(positive_root(&p)))
    } else {
        (None, None)
    };
    let norms = IntermediateNorms {
        mean_free_l2: f.mean_free().lp_norm(NormRequest::one_period(2.0))?,
        derivative_dual: if nonlinear { Some(derivative_dual_norm(spec, f)?) } else { None },
        shifted_dual: if kind == PotentialKind::Hardening {
            Some(shifted_dual_norm(spec, &eig, f)?)
        } else {
            None
        },
        forcing_dual: softening_poly.map(|p| p.constant),
        softening_poly,
        softening_root,
    };

    Ok(BoundReport {
        periods,
        branch: kind,
        eigen: eig,
        velocity_l2_basic,
        displacement_lr,
        velocity_l2_improved,
        velocity_l2_best,
        x0_magnitude,
        linfty_orbit: linfty_orbit_bound(spec, f, periods, x0_magnitude)?,
        constant_forcing: f.is_effectively_constant(),
        norms,
    })
}
