//! Periodic forcings as finite real trigonometric polynomials
//!
//! ```text
//! f(t) = mean + Σ_n ( a_n cos(nΩt) + b_n sin(nΩt) ),   Ω = 2π / T
//! ```
//!
//! Derivatives are exact. L^p norms over `[0, NT]` are computed once per
//! period and rescaled by `N^{1/p}`; the pointwise magnitude is Euclidean.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::numeric::{bisect, euclidean, golden_max};
use crate::quadrature::GaussLegendre;
use crate::{Error, Result};

/// Forcings whose mean-free L² norm falls below this fraction of the full
/// L² norm are treated as constant.
pub const CONSTANT_TOL: f64 = 1e-14;

const ROOT_SAMPLES_PER_HARMONIC: usize = 64;
const SUP_SAMPLES_PER_HARMONIC: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub n: u32,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigForcing {
    period: f64,
    mean: Vec<f64>,
    /// Sorted by `n`, indices distinct and >= 1.
    harmonics: Vec<Harmonic>,
}

/// Which L^p norm to take and over how many periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRequest {
    /// Exponent in `[1, ∞]`; use `f64::INFINITY` for the sup norm.
    pub p: f64,
    /// Interval multiplier `N`: the norm is taken over `[0, NT]`.
    pub periods: u32,
}

impl NormRequest {
    pub fn new(p: f64, periods: u32) -> Self {
        Self { p, periods }
    }

    pub fn one_period(p: f64) -> Self {
        Self { p, periods: 1 }
    }
}

/// Hölder conjugate `r / (r - 1)`.
pub fn dual_exponent(r: f64) -> Result<f64> {
    if !(r > 1.0) {
        return Err(Error::Domain(format!("dual exponent needs r > 1, got {r}")));
    }
    if r.is_infinite() {
        return Ok(1.0);
    }
    Ok(r / (r - 1.0))
}

/// One term of a linear combination: `scale * matrix * forcing`.
#[derive(Debug, Clone, Copy)]
pub struct Term<'a> {
    pub scale: f64,
    pub matrix: Option<&'a DMatrix<f64>>,
    pub forcing: &'a TrigForcing,
}

impl<'a> Term<'a> {
    pub fn scaled(scale: f64, forcing: &'a TrigForcing) -> Self {
        Self { scale, matrix: None, forcing }
    }

    pub fn mapped(scale: f64, matrix: &'a DMatrix<f64>, forcing: &'a TrigForcing) -> Self {
        Self { scale, matrix: Some(matrix), forcing }
    }
}

impl TrigForcing {
    pub fn new(period: f64, mean: Vec<f64>, mut harmonics: Vec<Harmonic>) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::Domain(format!("period must be positive, got {period}")));
        }
        let d = mean.len();
        if d == 0 {
            return Err(Error::Dimension("forcing dimension must be positive".into()));
        }
        for h in &harmonics {
            if h.n == 0 {
                return Err(Error::Domain("harmonic index must be >= 1".into()));
            }
            if h.cos.len() != d || h.sin.len() != d {
                return Err(Error::Dimension(format!(
                    "harmonic {} has coefficient lengths ({}, {}), expected {d}",
                    h.n,
                    h.cos.len(),
                    h.sin.len()
                )));
            }
        }
        harmonics.sort_by_key(|h| h.n);
        if harmonics.windows(2).any(|w| w[0].n == w[1].n) {
            return Err(Error::Domain("harmonic indices must be distinct".into()));
        }
        Ok(Self { period, mean, harmonics })
    }

    pub fn zero(dim: usize, period: f64) -> Result<Self> {
        Self::new(period, vec![0.0; dim], Vec::new())
    }

    pub fn constant(mean: Vec<f64>, period: f64) -> Result<Self> {
        Self::new(period, mean, Vec::new())
    }

    /// Scalar `amplitude * sin(n Ω t)` with `Ω = 2π / period`.
    pub fn scalar_sine(amplitude: f64, n: u32, period: f64) -> Result<Self> {
        Self::new(period, vec![0.0], vec![Harmonic { n, cos: vec![0.0], sin: vec![amplitude] }])
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Fundamental angular frequency `Ω = 2π / T`.
    pub fn omega(&self) -> f64 {
        2.0 * PI / self.period
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    pub fn max_harmonic(&self) -> u32 {
        self.harmonics.last().map_or(0, |h| h.n)
    }

    pub fn evaluate(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.evaluate_into(t, &mut out);
        out
    }

    pub fn evaluate_into(&self, t: f64, out: &mut [f64]) {
        out.copy_from_slice(&self.mean);
        let omega = self.omega();
        for h in &self.harmonics {
            let (s, c) = (h.n as f64 * omega * t).sin_cos();
            for (o, (a, b)) in out.iter_mut().zip(h.cos.iter().zip(&h.sin)) {
                *o += a * c + b * s;
            }
        }
    }

    /// Euclidean magnitude `|f(t)|`.
    pub fn magnitude(&self, t: f64) -> f64 {
        euclidean(&self.evaluate(t))
    }

    /// Exact `order`-th time derivative.
    pub fn derivative(&self, order: u32) -> TrigForcing {
        let omega = self.omega();
        let mut out = self.clone();
        if order == 0 {
            return out;
        }
        out.mean.iter_mut().for_each(|m| *m = 0.0);
        for _ in 0..order {
            for h in &mut out.harmonics {
                let w = h.n as f64 * omega;
                // d/dt [a cos + b sin] = w b cos - w a sin
                let new_cos: Vec<f64> = h.sin.iter().map(|b| w * b).collect();
                let new_sin: Vec<f64> = h.cos.iter().map(|a| -w * a).collect();
                h.cos = new_cos;
                h.sin = new_sin;
            }
        }
        out
    }

    /// `f - mean(f)`.
    pub fn mean_free(&self) -> TrigForcing {
        let mut out = self.clone();
        out.mean.iter_mut().for_each(|m| *m = 0.0);
        out
    }

    pub fn scaled(&self, s: f64) -> TrigForcing {
        let mut out = self.clone();
        out.mean.iter_mut().for_each(|m| *m *= s);
        for h in &mut out.harmonics {
            h.cos.iter_mut().for_each(|a| *a *= s);
            h.sin.iter_mut().for_each(|b| *b *= s);
        }
        out.prune();
        out
    }

    /// `matrix * f(t)` coefficient-wise.
    pub fn apply_matrix(&self, matrix: &DMatrix<f64>) -> Result<TrigForcing> {
        if matrix.ncols() != self.dim() {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, forcing has dimension {}",
                matrix.ncols(),
                self.dim()
            )));
        }
        let map = |v: &[f64]| -> Vec<f64> {
            (0..matrix.nrows())
                .map(|i| (0..matrix.ncols()).map(|j| matrix[(i, j)] * v[j]).sum())
                .collect()
        };
        let mut out = TrigForcing {
            period: self.period,
            mean: map(&self.mean),
            harmonics: self
                .harmonics
                .iter()
                .map(|h| Harmonic { n: h.n, cos: map(&h.cos), sin: map(&h.sin) })
                .collect(),
        };
        out.prune();
        Ok(out)
    }

    /// Whether the forcing is numerically constant in time.
    pub fn is_effectively_constant(&self) -> bool {
        let total = self.l2_norm_parseval();
        let varying = self.mean_free().l2_norm_parseval();
        varying <= CONSTANT_TOL * total || total == 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.mean.iter().all(|&m| m == 0.0) && self.harmonics.is_empty()
    }

    /// One-period L² norm from the coefficients:
    /// `T (|mean|² + ½ Σ (|a_n|² + |b_n|²))`.
    pub fn l2_norm_parseval(&self) -> f64 {
        let sq = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
        let s = sq(&self.mean)
            + 0.5 * self.harmonics.iter().map(|h| sq(&h.cos) + sq(&h.sin)).sum::<f64>();
        (self.period * s).sqrt()
    }

    /// `‖f‖_{L^p(0, NT)}`.
    pub fn lp_norm(&self, req: NormRequest) -> Result<f64> {
        let NormRequest { p, periods } = req;
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("L^p norm needs p >= 1, got {p}")));
        }
        if periods == 0 {
            return Err(Error::Domain("interval multiplier N must be >= 1".into()));
        }
        if self.is_zero() {
            return Ok(0.0);
        }
        if p.is_infinite() {
            return Ok(self.sup_norm());
        }
        let one_period = self.integral_of_power(p).powf(1.0 / p);
        Ok(one_period * (periods as f64).powf(1.0 / p))
    }

    /// `∫_0^T |f(t)|^p dt` by composite Gauss–Legendre, split at the zeros
    /// and near-zero minima of `f`.
    fn integral_of_power(&self, p: f64) -> f64 {
        let rule = GaussLegendre::panel_rule();
        let t_period = self.period;
        let mut buf = vec![0.0; self.dim()];
        let mut integrand = |t: f64| {
            self.evaluate_into(t, &mut buf);
            let m2: f64 = buf.iter().map(|x| x * x).sum();
            if p == 2.0 {
                m2
            } else {
                m2.powf(0.5 * p)
            }
        };

        let n_max = self.max_harmonic().max(1) as usize;
        let uniform = (2 * n_max).max(4);
        let mut points: Vec<(f64, bool)> =
            (0..uniform).map(|k| (k as f64 * t_period / uniform as f64, false)).collect();
        points.extend(self.singular_points().into_iter().map(|t| (t, true)));
        points.sort_by(|a, b| a.0.total_cmp(&b.0));

        let merge_tol = 1e-10 * t_period;
        let mut merged: Vec<(f64, bool)> = Vec::with_capacity(points.len());
        for (t, s) in points {
            match merged.last_mut() {
                Some(last) if t - last.0 <= merge_tol => {
                    if s && !last.1 {
                        *last = (t, true);
                    }
                }
                _ => merged.push((t, s)),
            }
        }
        if merged.len() > 1 {
            let (t_last, s_last) = *merged.last().unwrap();
            if merged[0].0 + t_period - t_last <= merge_tol {
                merged.pop();
                merged[0].1 |= s_last;
            }
        }

        // integrate over [t_0, t_0 + T]; periodicity makes the start irrelevant
        let start = merged[0];
        merged.push((start.0 + t_period, start.1));
        merged
            .windows(2)
            .map(|w| rule.integrate_graded(w[0].0, w[1].0, w[0].1, w[1].1, &mut integrand))
            .sum()
    }

    /// Zeros of each component (sign changes) and local minima of `|f|`
    /// that come close to zero, all in `[0, T)`.
    #[allow(clippy::needless_range_loop)]
    fn singular_points(&self) -> Vec<f64> {
        let d = self.dim();
        let t_period = self.period;
        let m = ROOT_SAMPLES_PER_HARMONIC * self.max_harmonic().max(1) as usize;
        let h = t_period / m as f64;
        let samples: Vec<Vec<f64>> = (0..m).map(|i| self.evaluate(i as f64 * h)).collect();
        let mut out = Vec::new();

        for j in 0..d {
            let comp = |t: f64| self.evaluate(t)[j];
            for i in 0..m {
                let a = samples[i][j];
                let b = samples[(i + 1) % m][j];
                if a == 0.0 {
                    out.push(i as f64 * h);
                } else if a * b < 0.0 {
                    let t0 = i as f64 * h;
                    let root = bisect(comp, t0, t0 + h, 1e-13 * t_period);
                    out.push(root.rem_euclid(t_period));
                }
            }
        }

        let mags: Vec<f64> = samples.iter().map(|v| euclidean(v)).collect();
        let peak = mags.iter().copied().fold(0.0, f64::max);
        for i in 0..m {
            let prev = mags[(i + m - 1) % m];
            let next = mags[(i + 1) % m];
            if mags[i] <= prev && mags[i] < next && mags[i] < 1e-2 * peak {
                let t0 = i as f64 * h;
                let (t_min, _) =
                    golden_max(|t| -self.magnitude(t), t0 - h, t0 + h, 1e-12 * t_period);
                out.push(t_min.rem_euclid(t_period));
            }
        }
        out
    }

    /// Grid maximum of `|f|` refined by golden-section search.
    fn sup_norm(&self) -> f64 {
        let m = SUP_SAMPLES_PER_HARMONIC * self.max_harmonic().max(1) as usize;
        let h = self.period / m as f64;
        let (i_best, v_best) = (0..m)
            .map(|i| (i, self.magnitude(i as f64 * h)))
            .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
        let t0 = i_best as f64 * h;
        let (_, refined) = golden_max(|t| self.magnitude(t), t0 - h, t0 + h, 1e-13 * self.period);
        v_best.max(refined)
    }

    /// Drop harmonics whose coefficients are all exactly zero.
    fn prune(&mut self) {
        self.harmonics
            .retain(|h| h.cos.iter().chain(&h.sin).any(|&x| x != 0.0));
    }
}

/// Term-wise linear combination `Σ scale_i * matrix_i * f_i`.
pub fn combine(terms: &[Term<'_>]) -> Result<TrigForcing> {
    let first = terms
        .first()
        .ok_or_else(|| Error::Domain("combine needs at least one term".into()))?;
    let period = first.forcing.period;
    let out_dim = |t: &Term<'_>| t.matrix.map_or(t.forcing.dim(), |m| m.nrows());
    let d = out_dim(first);

    let mut mean = vec![0.0; d];
    let mut acc: BTreeMap<u32, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for term in terms {
        if (term.forcing.period - period).abs() > 1e-12 * period {
            return Err(Error::Domain(format!(
                "period mismatch: {} vs {}",
                term.forcing.period, period
            )));
        }
        if out_dim(term) != d {
            return Err(Error::Dimension(format!(
                "term dimension {} differs from {d}",
                out_dim(term)
            )));
        }
        let mapped;
        let f = match term.matrix {
            Some(m) => {
                mapped = term.forcing.apply_matrix(m)?;
                &mapped
            }
            None => term.forcing,
        };
        for (o, x) in mean.iter_mut().zip(&f.mean) {
            *o += term.scale * x;
        }
        for h in &f.harmonics {
            let entry = acc.entry(h.n).or_insert_with(|| (vec![0.0; d], vec![0.0; d]));
            for i in 0..d {
                entry.0[i] += term.scale * h.cos[i];
                entry.1[i] += term.scale * h.sin[i];
            }
        }
    }
    let mut out = TrigForcing {
        period,
        mean,
        harmonics: acc.into_iter().map(|(n, (cos, sin))| Harmonic { n, cos, sin }).collect(),
    };
    out.prune();
    Ok(out)
}

/// `f - ratio * f'`, the shifted forcing of the hardening displacement bound.
pub fn derivative_shift(f: &TrigForcing, ratio: f64) -> TrigForcing {
    let df = f.derivative(1);
    combine(&[Term::scaled(1.0, f), Term::scaled(-ratio, &df)])
        .expect("a forcing and its derivative share dimension and period")
}

/// `M f'' - C f' + K f`, the forcing dual to the equation of motion.
pub fn adjoint_operator(
    f: &TrigForcing,
    mass: &DMatrix<f64>,
    damping: &DMatrix<f64>,
    stiffness: &DMatrix<f64>,
) -> Result<TrigForcing> {
    let df = f.derivative(1);
    let ddf = f.derivative(2);
    combine(&[
        Term::mapped(1.0, mass, &ddf),
        Term::mapped(-1.0, damping, &df),
        Term::mapped(1.0, stiffness, f),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: f64 = 1.7;

    fn sine(a: f64) -> TrigForcing {
        TrigForcing::scalar_sine(a, 1, 2.0 * PI / W).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let zero = TrigForcing::zero(2, 1.0).unwrap();
        assert_eq!(zero.evaluate(0.3), vec![0.0, 0.0]);
        let f = sine(2.5);
        assert!((f.evaluate(PI / (2.0 * W))[0] - 2.5).abs() < 1e-14);
        assert!(f.evaluate(f.period())[0].abs() < 1e-14);
    }

    #[test]
    fn periodic_by_construction() {
        let f = TrigForcing::new(
            0.7,
            vec![0.3, -1.0],
            vec![
                Harmonic { n: 1, cos: vec![1.0, 0.2], sin: vec![0.0, 0.5] },
                Harmonic { n: 5, cos: vec![-0.1, 0.0], sin: vec![0.3, 2.0] },
            ],
        )
        .unwrap();
        for k in 0..50 {
            let t = 0.137 * k as f64;
            let a = f.evaluate(t);
            let b = f.evaluate(t + f.period());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn derivative_examples() {
        let a = 1.3;
        let f = sine(a);
        let df = f.derivative(1);
        let ddf = f.derivative(2);
        for k in 0..20 {
            let t = 0.31 * k as f64;
            assert!((df.evaluate(t)[0] - a * W * (W * t).cos()).abs() < 1e-12);
            assert!((ddf.evaluate(t)[0] + a * W * W * (W * t).sin()).abs() < 1e-12);
        }
        let c = TrigForcing::constant(vec![4.0], 1.0).unwrap();
        assert!(c.derivative(1).is_zero());
    }

    #[test]
    fn mean_free_examples() {
        let f = TrigForcing::new(
            2.0 * PI,
            vec![3.0],
            vec![Harmonic { n: 1, cos: vec![0.0], sin: vec![1.0] }],
        )
        .unwrap();
        let g = f.mean_free();
        assert_eq!(g, TrigForcing::scalar_sine(1.0, 1, 2.0 * PI).unwrap());
        assert_eq!(g.mean_free(), g);
        assert!(TrigForcing::constant(vec![2.0], 1.0).unwrap().mean_free().is_zero());
    }

    #[test]
    fn sine_norms_match_closed_forms() {
        let a = 2.2;
        let f = sine(a);
        let l2 = f.lp_norm(NormRequest::one_period(2.0)).unwrap();
        assert!((l2 - a * (PI / W).sqrt()).abs() < 1e-10 * l2);
        let l1 = f.lp_norm(NormRequest::one_period(1.0)).unwrap();
        assert!((l1 - 4.0 * a / W).abs() < 1e-10 * l1, "{l1}");
        let linf = f.lp_norm(NormRequest::one_period(f64::INFINITY)).unwrap();
        assert!((linf - a).abs() < 1e-12);
    }

    #[test]
    fn fractional_norm_of_sine_matches_beta_function() {
        // ∫_0^{2π} |sin u|^p du = 2 √π Γ((p+1)/2) / Γ(p/2 + 1); for p = 4/3
        // this equals 4.61392523... (independent series evaluation below).
        let p = 4.0 / 3.0;
        let f = TrigForcing::scalar_sine(1.0, 1, 2.0 * PI).unwrap();
        let got = f.lp_norm(NormRequest::one_period(p)).unwrap().powf(p);
        let want = 4.0 * wallis_like(p);
        assert!((got - want).abs() < 1e-11 * want, "{got} vs {want}");
    }

    /// ∫_0^{π/2} sin^p(u) du by the product formula for the Beta function,
    /// B((p+1)/2, 1/2) / 2, evaluated through a log-gamma series.
    fn wallis_like(p: f64) -> f64 {
        0.5 * (ln_gamma((p + 1.0) / 2.0) + ln_gamma(0.5) - ln_gamma(p / 2.0 + 1.0)).exp()
    }

    /// Lanczos approximation (g = 7, n = 9), accurate to ~1e-15.
    fn ln_gamma(x: f64) -> f64 {
        const G: [f64; 9] = [
            0.999_999_999_999_809_9,
            676.520_368_121_885_1,
            -1_259.139_216_722_402_8,
            771.323_428_777_653_1,
            -176.615_029_162_140_6,
            12.507_343_278_686_905,
            -0.138_571_095_265_720_12,
            9.984_369_578_019_572e-6,
            1.505_632_735_149_311_6e-7,
        ];
        let x = x - 1.0;
        let mut a = G[0];
        let t = x + 7.5;
        for (i, g) in G.iter().enumerate().skip(1) {
            a += g / (x + i as f64);
        }
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }

    #[test]
    fn dual_exponent_examples() {
        assert_eq!(dual_exponent(2.0).unwrap(), 2.0);
        assert!((dual_exponent(4.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((dual_exponent(3.0).unwrap() - 1.5).abs() < 1e-15);
        assert!(dual_exponent(1.0).is_err());
        assert!(dual_exponent(0.5).is_err());
    }

    #[test]
    fn norm_rejects_small_p() {
        assert!(matches!(sine(1.0).lp_norm(NormRequest::one_period(0.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn combine_examples() {
        let f = sine(1.0);
        let g = TrigForcing::new(
            f.period(),
            vec![1.0],
            vec![Harmonic { n: 3, cos: vec![1.0], sin: vec![0.0] }],
        )
        .unwrap();
        assert_eq!(combine(&[Term::scaled(1.0, &f), Term::scaled(0.0, &g)]).unwrap().harmonics(), f.harmonics());
        assert!(combine(&[Term::scaled(1.0, &f), Term::scaled(-1.0, &f)]).unwrap().is_zero());

        let other_period = TrigForcing::scalar_sine(1.0, 1, 1.0).unwrap();
        assert!(combine(&[Term::scaled(1.0, &f), Term::scaled(1.0, &other_period)]).is_err());
    }

    #[test]
    fn adjoint_operator_for_scalar_duffing() {
        // M = 1, C = c, K = k, f = A sin(nωt):
        // M f'' - C f' + K f = A (k - n²ω²) sin(nωt) - A c n ω cos(nωt)
        let (a, c, k, n, w) = (0.7, 0.1, 1.1, 2u32, 1.3);
        let f = TrigForcing::scalar_sine(a, n, 2.0 * PI / w).unwrap();
        let one = |x: f64| DMatrix::from_element(1, 1, x);
        let g = adjoint_operator(&f, &one(1.0), &one(c), &one(k)).unwrap();
        let nw = n as f64 * w;
        for i in 0..25 {
            let t = 0.19 * i as f64;
            let want = a * (k - nw * nw) * (nw * t).sin() - a * c * nw * (nw * t).cos();
            assert!((g.evaluate(t)[0] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn touching_zero_is_integrated_accurately() {
        // f = 1 + cos t touches zero at t = π. ∫ (1+cos t)^{3/2} dt over 2π
        // = 2^{3/2} ∫ |cos(t/2)|^3 dt = 2^{3/2} * 2 * (4/3) = 16√2/3.
        let f = TrigForcing::new(
            2.0 * PI,
            vec![1.0],
            vec![Harmonic { n: 1, cos: vec![1.0], sin: vec![0.0] }],
        )
        .unwrap();
        let got = f.lp_norm(NormRequest::one_period(1.5)).unwrap().powf(1.5);
        let want = 16.0 * 2f64.sqrt() / 3.0;
        assert!((got - want).abs() < 1e-10 * want, "{got} vs {want}");
    }

    #[test]
    fn vector_norm_uses_euclidean_magnitude() {
        // (cos t, sin t) has |f| = 1 everywhere.
        let f = TrigForcing::new(
            2.0 * PI,
            vec![0.0, 0.0],
            vec![Harmonic { n: 1, cos: vec![1.0, 0.0], sin: vec![0.0, 1.0] }],
        )
        .unwrap();
        for p in [1.0, 4.0 / 3.0, 2.0, 3.5] {
            let got = f.lp_norm(NormRequest::one_period(p)).unwrap();
            let want = (2.0 * PI).powf(1.0 / p);
            assert!((got - want).abs() < 1e-12 * want);
        }
        let linf = f.lp_norm(NormRequest::one_period(f64::INFINITY)).unwrap();
        assert!((linf - 1.0).abs() < 1e-14);
    }
}
