//! Every periodic orbit the integrator finds must respect every bound.

use orbitbound::presets::{duffing_system, DuffingParams};
use orbitbound::verify::{check_bounds, find_limit_cycle, Dynamics, OrbitOptions, OrbitOutcome};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn random_duffing_orbits_respect_bounds() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut converged = 0;
    for draw in 0..50 {
        let params = DuffingParams {
            c: rng.gen_range(0.05..1.0),
            k: rng.gen_range(0.5..2.0),
            delta: rng.gen_range(0.25..4.0),
            softening: draw % 2 == 1,
            ..DuffingParams::hardening()
        };
        let amplitude = rng.gen_range(0.05..5.0);
        let spec = duffing_system(&params);
        let f = params.unit_forcing().scaled(amplitude);
        let dynamics = Dynamics::new(&spec, params.gradient(), &f).unwrap();
        let outcome = find_limit_cycle(&dynamics, 1, &OrbitOptions::default()).unwrap();
        let OrbitOutcome::Converged(orbit) = outcome else { continue };
        assert!(orbit.residuals_ok(), "draw {draw}: residuals {orbit:?}");
        converged += 1;
        for check in check_bounds(&spec, &f, &orbit).unwrap() {
            assert!(check.pass, "draw {draw} {params:?} A={amplitude}: {check:?}");
        }
    }
    // Most hardening draws settle on a cycle.
    assert!(converged >= 20, "only {converged} orbits found");
}

#[test]
fn subharmonic_windows_respect_bounds() {
    let params = DuffingParams::hardening();
    let spec = duffing_system(&params);
    for amplitude in [0.05, 0.5] {
        let f = params.unit_forcing().scaled(amplitude);
        let dynamics = Dynamics::new(&spec, params.gradient(), &f).unwrap();
        for n in [2, 4] {
            let OrbitOutcome::Converged(orbit) = find_limit_cycle(&dynamics, n, &OrbitOptions::default()).unwrap()
            else {
                panic!("no orbit at A={amplitude}, N={n}")
            };
            assert_eq!(orbit.periods, n);
            for check in check_bounds(&spec, &f, &orbit).unwrap() {
                assert!(check.pass, "A={amplitude} N={n}: {check:?}");
            }
        }
    }
}
