use std::f64::consts::PI;

use nalgebra::DMatrix;
use orbitbound::criteria::{
    critical_amplitude, criterion, gap_function, sweep, GapCurve, SweepParam, SweepStatus,
};
use orbitbound::forcing::Harmonic;
use orbitbound::presets::{duffing_system, DuffingParams};
use orbitbound::{PotentialEnvelope, SystemSpec, TrigForcing};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// (∫_0^{2π} |sin t|^{4/3} dt)^{3/4} = (2√π Γ(7/6) / Γ(5/3))^{3/4}
const SIN_L43: f64 = 2.636891316571892;

/// Gap function of the hardening Duffing oscillator with ω = n = 1 written
/// out by hand.
fn hardening_oracle(p: &DuffingParams, a: f64) -> f64 {
    let (c, k, d) = (p.c, p.k, p.delta);
    let adjoint = a * ((k - 1.0).powi(2) + c * c).sqrt() * SIN_L43;
    let shifted = a * (1.0 + 1.0 / (c * c)).sqrt() * SIN_L43;
    PI * a * a - 4.0 * d * a - d.powf(-1.0 / 3.0) * adjoint * shifted.cbrt()
}

/// Positive root of `δ y³ - k √(2π) y - q` by the trigonometric/Cardano
/// formulas.
fn cubic_root(delta: f64, k: f64, q: f64) -> f64 {
    let p = -k * (2.0 * PI).sqrt() / delta;
    let q = -q / delta;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    if disc >= 0.0 {
        (-q / 2.0 + disc.sqrt()).cbrt() + (-q / 2.0 - disc.sqrt()).cbrt()
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let theta = (3.0 * q / (p * m)).acos() / 3.0;
        m * theta.cos()
    }
}

fn softening_oracle(p: &DuffingParams, a: f64) -> f64 {
    let (c, k, d) = (p.c, p.k, p.delta);
    let adjoint = a * ((k - 1.0).powi(2) + c * c).sqrt() * SIN_L43;
    let y = cubic_root(d, k, a * SIN_L43);
    PI * a * a - 4.0 * d * a - adjoint * y
}

fn amplitudes() -> impl Iterator<Item = f64> {
    (0..50).map(|i| 10f64.powf(-2.0 + 5.0 * i as f64 / 49.0))
}

#[test]
fn hardening_gap_matches_hand_formula() {
    for c in [0.01, 0.1, 1.0] {
        let p = DuffingParams { c, ..DuffingParams::hardening() };
        let spec = duffing_system(&p);
        let f = p.unit_forcing();
        let curve = GapCurve::new(&spec, &f).unwrap();
        for a in amplitudes() {
            let oracle = hardening_oracle(&p, a);
            let direct = gap_function(&spec, &f, a).unwrap();
            let scale = PI * a * a + 4.0 * a;
            assert!((direct - oracle).abs() <= 1e-10 * scale, "c={c} A={a}: {direct} vs {oracle}");
            assert!((curve.eval(a) - direct).abs() <= 1e-10 * scale);
        }
    }
}

#[test]
fn softening_gap_matches_cardano() {
    for delta in [0.25, 1.0, 3.0] {
        let p = DuffingParams { delta, ..DuffingParams::softening() };
        let spec = duffing_system(&p);
        let f = p.unit_forcing();
        let curve = GapCurve::new(&spec, &f).unwrap();
        for a in amplitudes() {
            let oracle = softening_oracle(&p, a);
            let direct = gap_function(&spec, &f, a).unwrap();
            let scale = PI * a * a + 4.0 * delta * a;
            assert!((direct - oracle).abs() <= 1e-10 * scale, "δ={delta} A={a}: {direct} vs {oracle}");
            assert!((curve.eval(a) - direct).abs() <= 1e-10 * scale);
        }
    }
}

#[test]
fn reference_critical_amplitudes() {
    // Independent bisection of the hand formulas above.
    let hard = DuffingParams::hardening();
    let a = critical_amplitude(&duffing_system(&hard), &hard.unit_forcing()).unwrap();
    assert!((a.a_star - 1.6952108317128363).abs() < 1e-9);
    let soft = DuffingParams::softening();
    let a = critical_amplitude(&duffing_system(&soft), &soft.unit_forcing()).unwrap();
    assert!((a.a_star - 1.528669758286564).abs() < 1e-9);
}

fn random_system(rng: &mut StdRng) -> (SystemSpec, TrigForcing) {
    let d = rng.gen_range(1..=3);
    let mut spd = |shift: f64| {
        let a = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
        &a * a.transpose() + DMatrix::identity(d, d) * shift
    };
    let (m, c, k) = (spd(0.1), spd(0.05), spd(0.0));
    let u0 = rng.gen_range(0.1..3.0);
    let r = rng.gen_range(2.5..6.0);
    let grad_bound = rng.gen_range(0.1..3.0);
    let potential = if rng.gen_bool(0.5) {
        PotentialEnvelope::hardening(u0, r, grad_bound)
    } else {
        PotentialEnvelope::softening(u0, r, grad_bound)
    };
    let spec = SystemSpec::new(m, c, k, potential).unwrap();
    let harmonics = (1..=rng.gen_range(1..4))
        .map(|n| Harmonic {
            n,
            cos: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
            sin: (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect(),
        })
        .collect();
    let mean = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
    let f = TrigForcing::new(rng.gen_range(1.0..8.0), mean, harmonics).unwrap();
    (spec, f)
}

#[test]
fn verdict_agrees_with_gap_sign() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let (spec, f) = random_system(&mut rng);
        let res = criterion(&spec, &f).unwrap();
        assert_eq!(res.satisfied, gap_function(&spec, &f, 1.0).unwrap() > 0.0);
        assert!(res.terms.gradient_term >= 0.0 && res.terms.nonlinear_term >= 0.0);
    }
}

#[test]
fn random_critical_amplitudes_are_sign_changes() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..20 {
        let (spec, f) = random_system(&mut rng);
        let c = critical_amplitude(&spec, &f).unwrap();
        assert!(gap_function(&spec, &f, c.a_star * (1.0 - 1e-4)).unwrap() < 0.0);
        assert!(gap_function(&spec, &f, c.a_star * (1.0 + 1e-4)).unwrap() > 0.0);
        assert!(c.gap_at_root.abs() <= 1e-10 * c.a_star.powi(2).max(1.0));
    }
}

#[test]
fn sweep_rows_bracket_their_roots() {
    let p = DuffingParams::hardening();
    let spec = duffing_system(&p);
    let f = p.unit_forcing();
    for (param, grid) in [
        (SweepParam::Damping, vec![0.01, 0.05, 0.1, 0.5, 1.0]),
        (SweepParam::StiffnessScale, vec![0.2, 0.9, 1.5]),
        (SweepParam::Omega, vec![0.5, 1.0, 2.0]),
        (SweepParam::HarmonicIndex, vec![1.0, 2.0, 3.0]),
    ] {
        let rows = sweep(&spec, &f, param, &grid).unwrap();
        assert_eq!(rows.len(), grid.len());
        for (row, &v) in rows.iter().zip(&grid) {
            assert_eq!(row.value, v);
            assert_eq!(row.status, SweepStatus::Ok);
            let (s, g) = param.apply(&spec, &f, v).unwrap();
            let a = row.a_star.unwrap();
            assert!(gap_function(&s, &g, a * (1.0 - 1e-4)).unwrap() < 0.0);
            assert!(gap_function(&s, &g, a * (1.0 + 1e-4)).unwrap() > 0.0);
        }
    }
}

#[test]
fn damping_sweep_from_one_hundredth_to_one() {
    // A* at c = 0.01 and c = 1 both exceed the value near c = 0.1 in this
    // family, so only the endpoints are pinned.
    let p = DuffingParams::hardening();
    let rows = sweep(&duffing_system(&p), &p.unit_forcing(), SweepParam::Damping, &[0.01, 0.1, 1.0]).unwrap();
    let a: Vec<f64> = rows.iter().map(|r| r.a_star.unwrap()).collect();
    let oracle = |c: f64| {
        let q = DuffingParams { c, ..p };
        let (mut lo, mut hi) = (1e-9, 1.0);
        while hardening_oracle(&q, hi) <= 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hardening_oracle(&q, mid) < 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        lo
    };
    for (ai, c) in a.iter().zip([0.01, 0.1, 1.0]) {
        assert!((ai - oracle(c)).abs() < 1e-9 * ai, "c={c}");
    }
    assert!(a[2] > a[1]);
}
