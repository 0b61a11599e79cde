use nalgebra::{DMatrix, DVector};
use orbitbound::system_model::{eigen_bounds, symmetric_eigenvalues};
use orbitbound::{PotentialEnvelope, SystemSpec};
use proptest::prelude::*;

fn spd(d: usize, entries: &[f64], shift: f64) -> DMatrix<f64> {
    let a = DMatrix::from_row_slice(d, d, &entries[..d * d]);
    &a * a.transpose() + DMatrix::identity(d, d) * shift
}

fn matrices() -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
    (1usize..=4).prop_flat_map(|d| {
        let e = || prop::collection::vec(-2.0..2.0f64, d * d);
        (Just(d), e(), e(), e(), prop::collection::vec(-1.0..1.0f64, d))
    })
}

proptest! {
    #[test]
    fn rayleigh_quotients_are_bracketed((d, m, c, k, v) in matrices()) {
        let spec = SystemSpec::new(
            spd(d, &m, 0.0),
            spd(d, &c, 0.1),
            spd(d, &k, 0.0),
            PotentialEnvelope::none(),
        )
        .unwrap();
        let e = eigen_bounds(&spec).unwrap();
        let v = DVector::from_vec(v);
        prop_assume!(v.norm() > 1e-3);
        let q = |a: &DMatrix<f64>| (v.transpose() * a * &v)[(0, 0)] / v.norm_squared();
        let tol = 1e-10;
        prop_assert!(e.m_min - tol <= q(&spec.mass) && q(&spec.mass) <= e.m_max + tol);
        prop_assert!(e.c_min - tol <= q(&spec.damping) && q(&spec.damping) <= e.c_max + tol);
        prop_assert!(e.k_min - tol <= q(&spec.stiffness) && q(&spec.stiffness) <= e.k_max + tol);
        prop_assert!(e.c_min >= 0.1 - 1e-12);
    }

    #[test]
    fn eigenvalues_scale_and_sum_to_trace((d, m, _c, _k, _v) in matrices(), alpha in 0.1..10.0f64) {
        let a = spd(d, &m, 0.0);
        let base = symmetric_eigenvalues(&a).unwrap();
        let scaled = symmetric_eigenvalues(&(&a * alpha)).unwrap();
        let scale = a.norm().max(1.0);
        for (x, y) in base.iter().zip(&scaled) {
            prop_assert!((x * alpha - y).abs() <= 1e-11 * scale * alpha);
        }
        let sum: f64 = base.iter().sum();
        prop_assert!((sum - a.trace()).abs() <= 1e-11 * scale);
    }
}
