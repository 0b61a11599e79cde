//! Gauss–Legendre quadrature with optional geometric grading towards panel
//! endpoints.
//!
//! Integrands of the form `|f(t)|^p` lose smoothness only where `f`
//! vanishes. The norm engine places panel breakpoints at those points and
//! grades the panels geometrically towards them, which keeps the composite
//! rule spectrally accurate for fractional `p`.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Number of nodes per panel used by the norm engine.
pub const PANEL_NODES: usize = 32;

/// Ratio between consecutive graded panels.
const GRADING_RATIO: f64 = 0.2;
/// Number of geometrically graded panels towards a singular endpoint.
const GRADING_LEVELS: usize = 14;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// The shared 32-node rule.
    pub fn panel_rule() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(PANEL_NODES))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Integrate over `[a, b]`, grading panels geometrically towards the
    /// endpoints flagged as singular.
    pub fn integrate_graded<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        grade_left: bool,
        grade_right: bool,
        mut f: F,
    ) -> f64 {
        if b <= a {
            return 0.0;
        }
        let mid = 0.5 * (a + b);
        let half = mid - a;
        let mut total = 0.0;
        // left half: [a, mid]
        if grade_left {
            let mut outer = half;
            for _ in 0..GRADING_LEVELS {
                let inner = outer * GRADING_RATIO;
                total += self.integrate(a + inner, a + outer, &mut f);
                outer = inner;
            }
            total += self.integrate(a, a + outer, &mut f);
        } else {
            total += self.integrate(a, mid, &mut f);
        }
        // right half: [mid, b]
        if grade_right {
            let mut outer = half;
            for _ in 0..GRADING_LEVELS {
                let inner = outer * GRADING_RATIO;
                total += self.integrate(b - outer, b - inner, &mut f);
                outer = inner;
            }
            total += self.integrate(b - outer, b, &mut f);
        } else {
            total += self.integrate(mid, b, &mut f);
        }
        total
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 32, 64] {
            let rule = GaussLegendre::new(n);
            let s: f64 = rule.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}: {s}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let rule = GaussLegendre::new(8);
        for deg in 0..16 {
            let got = rule.integrate(0.0, 1.0, |x| x.powi(deg));
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn graded_rule_handles_fractional_power() {
        let rule = GaussLegendre::panel_rule();
        // ∫_0^1 x^{4/3} dx = 3/7
        let got = rule.integrate_graded(0.0, 1.0, true, false, |x| x.powf(4.0 / 3.0));
        assert!((got - 3.0 / 7.0).abs() < 1e-14);
        // ∫_0^1 sqrt(x(1-x)) dx = π/8
        let got = rule.integrate_graded(0.0, 1.0, true, true, |x| (x * (1.0 - x)).sqrt());
        assert!((got - PI / 8.0).abs() < 1e-13, "{got}");
    }
}
