use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::anyhow;
use orbitbound::bounds::{
    bound_report, lagrange_root_bound, parabolic_root_bound, positive_root, stationary_point, SofteningPoly,
};
use orbitbound::criteria::{critical_amplitude, criterion, sweep as run_sweep, SweepParam, SweepRow};
use orbitbound::linear_analysis::{linear_escape_amplitude, parseval_l2, solve_harmonics};
use orbitbound::system_model::{eigen_bounds, validate};
use orbitbound::verify::{
    check_bounds, find_limit_cycle, ConcreteGradient, Dynamics, OrbitOutcome, OrbitSample, Quantity,
};
use orbitbound::{PotentialKind, SystemSpec};
use serde_json::{json, Value};

use crate::config::{Problem, RunConfig};
use crate::output::{csv_bytes, json_bytes, number, resolve_dir, stem, write_atomic};
use crate::{Cli, Failure, EXIT_BOUND_FAILURE, EXIT_OK};

pub const SCHEMA: u32 = 1;

/// Samples used to check a concrete gradient against the declared envelope.
const ENVELOPE_SAMPLES: usize = 1000;

fn load(config: &Path) -> Result<Problem, Failure> {
    let cfg = RunConfig::load(config).map_err(Failure::error)?;
    cfg.build().map_err(|e| Failure::error(anyhow!("invalid config {}: {e}", config.display())))
}

fn require_valid(spec: &SystemSpec) -> Result<Vec<String>, Failure> {
    let report = validate(spec).map_err(Failure::error)?;
    if !report.is_ok() {
        let list: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::precondition(anyhow!("system violates the model assumptions: {}", list.join("; "))));
    }
    Ok(report.warnings)
}

fn out_dir(cli: &Cli, problem: &Problem) -> PathBuf {
    resolve_dir(cli.output_dir.as_ref(), problem.analysis.output_dir.as_ref())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn fmt(x: f64) -> String {
    format!("{x:.6e}")
}

pub fn analyze(cli: &Cli, config: &Path) -> Result<u8, Failure> {
    let problem = load(config)?;
    let spec = &problem.spec;
    let f = &problem.forcing;
    let warnings = require_valid(spec)?;
    let eigen = eigen_bounds(spec).map_err(Failure::precondition)?;
    let mut summary = String::new();

    let _ = writeln!(
        summary,
        "system: d = {}, {:?} potential (u0 = {}, r = {}, U0 = {}), domain radius {}",
        spec.dim(),
        spec.potential.kind,
        spec.potential.u0,
        spec.potential.r,
        spec.potential.grad_bound,
        spec.domain_radius
    );
    for w in &warnings {
        let _ = writeln!(summary, "warning: {w}");
    }
    let system = json!({
        "dimension": spec.dim(),
        "domain_radius": spec.domain_radius,
        "potential": to_value(&spec.potential),
        "eigen": to_value(&eigen),
        "warnings": warnings,
    });

    let linear = match solve_harmonics(spec, f) {
        Ok(sol) => {
            let l2 = parseval_l2(&sol).ok();
            let escape = linear_escape_amplitude(spec, f).ok();
            match (l2, escape) {
                (Some(l2), Some(a)) => {
                    let _ = writeln!(summary, "linear response: ‖x‖_L2 = {}, leaves the domain in RMS above amplitude {}", fmt(l2), fmt(a));
                }
                _ if sol.is_resonant() => {
                    let _ = writeln!(summary, "linear response: resonant at harmonics {:?}", sol.resonant);
                }
                _ => {}
            }
            json!({
                "resonant": sol.resonant,
                "response_l2": l2,
                "escape_amplitude": escape,
                "escape_rule": "‖x‖_L∞ >= ‖x‖_L2 / sqrt(T) >= R (Jensen); the form with sqrt(T) multiplying the L2 norm is dimensionally inverted and not used",
                "harmonics": to_value(&sol.coefficients),
            })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };

    let x0 = problem.analysis.x0_magnitude_or(spec.domain_radius);
    let mut bounds = Vec::new();
    for &n in &problem.analysis.periods {
        let b = bound_report(spec, f, n, x0).map_err(Failure::precondition)?;
        let _ = write!(summary, "bounds N = {n}: ‖x'‖_L2 <= {}", fmt(b.velocity_l2_basic));
        if let Some(v) = b.displacement_lr {
            let _ = write!(summary, ", ‖x‖_L{} <= {}", spec.potential.r, fmt(v));
        }
        if let Some(v) = b.velocity_l2_improved {
            let _ = write!(summary, ", ‖x'‖_L2 <= {} (improved)", fmt(v));
        }
        let _ = writeln!(summary, ", sup|x| <= {}", fmt(b.linfty_orbit));
        bounds.push(to_value(&b));
    }

    let criteria = if spec.potential.kind == PotentialKind::None {
        let _ = writeln!(summary, "criteria: not applicable without a hardening or softening potential");
        json!({ "applicable": false, "reason": "potential kind is none" })
    } else {
        let res = criterion(spec, f).map_err(Failure::precondition)?;
        let _ = writeln!(
            summary,
            "criterion: ‖f‖²_L2 = {} vs {} -> {}",
            fmt(res.lhs),
            fmt(res.rhs),
            if res.satisfied { "no periodic orbit stays inside the domain" } else { "inconclusive" }
        );
        let critical = match critical_amplitude(spec, f) {
            Ok(c) => {
                let _ = writeln!(summary, "critical amplitude: A* = {}", fmt(c.a_star));
                to_value(&c)
            }
            Err(e) => {
                let _ = writeln!(summary, "critical amplitude: {e}");
                json!({ "error": e.to_string() })
            }
        };
        json!({
            "applicable": true,
            "result": to_value(&res),
            "gap_at_unit_amplitude": res.gap(),
            "critical_amplitude": critical,
        })
    };

    let report = json!({
        "schema": SCHEMA,
        "system": system,
        "linear": linear,
        "bounds": bounds,
        "criteria": criteria,
    });
    let dir = out_dir(cli, &problem);
    let name = stem(config);
    write_atomic(&dir.join(format!("{name}.report.json")), &json_bytes(&report)).map_err(Failure::error)?;
    write_atomic(&dir.join(format!("{name}.summary.txt")), summary.as_bytes()).map_err(Failure::error)?;
    if !cli.quiet {
        print!("{summary}");
    }
    Ok(EXIT_OK)
}

pub struct SweepArgs {
    pub param: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub points: Option<usize>,
    pub log: bool,
}

pub fn sweep_grid(from: f64, to: f64, points: usize, log: bool) -> anyhow::Result<Vec<f64>> {
    if points < 2 {
        return Err(anyhow!("--points must be at least 2"));
    }
    if !(to > from) {
        return Err(anyhow!("sweep needs from < to, got {from} .. {to}"));
    }
    if log && !(from > 0.0) {
        return Err(anyhow!("geometric sweep needs from > 0"));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let s = i as f64 / last;
            if i + 1 == points {
                to
            } else if log {
                from * (to / from).powf(s)
            } else {
                from + (to - from) * s
            }
        })
        .collect())
}

pub fn sweep(cli: &Cli, config: &Path, args: SweepArgs) -> Result<u8, Failure> {
    let problem = load(config)?;
    require_valid(&problem.spec)?;
    if problem.spec.potential.kind == PotentialKind::None {
        return Err(Failure::precondition(anyhow!("sweeps need a hardening or softening potential")));
    }
    let fallback = problem.analysis.sweep.clone();
    let pick = |name: &str| anyhow!("missing --{name} and no [analysis.sweep] in the config");
    let param_name = args.param.or(fallback.as_ref().map(|s| s.param.clone())).ok_or_else(|| Failure::error(pick("param")))?;
    let from = args.from.or(fallback.as_ref().map(|s| s.from)).ok_or_else(|| Failure::error(pick("from")))?;
    let to = args.to.or(fallback.as_ref().map(|s| s.to)).ok_or_else(|| Failure::error(pick("to")))?;
    let points = args.points.or(fallback.as_ref().map(|s| s.points)).ok_or_else(|| Failure::error(pick("points")))?;
    let log = args.log || fallback.as_ref().is_some_and(|s| s.log);

    let param: SweepParam = param_name.parse().map_err(Failure::error)?;
    let grid = sweep_grid(from, to, points, log).map_err(Failure::error)?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = pool.build().map_err(Failure::error)?;
    let rows = pool
        .install(|| run_sweep(&problem.spec, &problem.forcing, param, &grid))
        .map_err(Failure::error)?;

    let bytes = sweep_csv(param, &rows).map_err(Failure::error)?;
    let dir = out_dir(cli, &problem);
    let path = dir.join(format!("{}.sweep_{}.csv", stem(config), param.name()));
    write_atomic(&path, &bytes).map_err(Failure::error)?;
    if !cli.quiet {
        println!("{:>14}  {:>14}  status", param.name(), "A*");
        for r in &rows {
            let a = r.a_star.map_or_else(|| "-".to_string(), fmt);
            println!("{:>14}  {:>14}  {}", fmt(r.value), a, r.status.as_str());
        }
        println!("wrote {}", path.display());
    }
    Ok(EXIT_OK)
}

fn sweep_csv(param: SweepParam, rows: &[SweepRow]) -> anyhow::Result<Vec<u8>> {
    let header = ["param", "value", "A_star", "status"].map(String::from);
    csv_bytes(
        &header,
        rows.iter().map(|r| {
            [
                param.name().to_string(),
                number(r.value),
                r.a_star.map(number).unwrap_or_default(),
                r.status.as_str().to_string(),
            ]
        }),
    )
}

fn orbit_csv(orbit: &OrbitSample) -> anyhow::Result<Vec<u8>> {
    let d = orbit.dim();
    let mut header = vec!["t".to_string()];
    header.extend((1..=d).map(|i| format!("x_{i}")));
    header.extend((1..=d).map(|i| format!("v_{i}")));
    csv_bytes(
        &header,
        orbit.times.iter().zip(&orbit.positions).zip(&orbit.velocities).map(|((t, x), v)| {
            std::iter::once(number(*t)).chain(x.iter().chain(v).map(|&y| number(y))).collect::<Vec<_>>()
        }),
    )
}

fn check_gradient(problem: &Problem) -> Result<ConcreteGradient, Failure> {
    let spec = &problem.spec;
    let gradient = problem
        .gradient
        .ok_or_else(|| Failure::precondition(anyhow!("verify needs potential.gradient in the config")))?;
    let consistent = match (spec.potential.kind, gradient) {
        (PotentialKind::None, ConcreteGradient::Zero) => true,
        (PotentialKind::None, _) | (_, ConcreteGradient::Zero) => false,
        _ => true,
    };
    if !consistent {
        return Err(Failure::precondition(anyhow!(
            "gradient {gradient:?} does not match a {:?} potential",
            spec.potential.kind
        )));
    }
    gradient
        .check_envelope(&spec.potential, spec.dim(), spec.domain_radius, ENVELOPE_SAMPLES, 0)
        .map_err(Failure::precondition)?;
    Ok(gradient)
}

pub fn verify(cli: &Cli, config: &Path, amplitude: f64, periods: Option<u32>) -> Result<u8, Failure> {
    let problem = load(config)?;
    let spec = &problem.spec;
    require_valid(spec)?;
    if !(amplitude > 0.0) {
        return Err(Failure::error(anyhow!("--amplitude must be positive")));
    }
    if periods == Some(0) {
        return Err(Failure::error(anyhow!("--N must be at least 1")));
    }
    let gradient = check_gradient(&problem)?;
    let f = problem.forcing.scaled(amplitude);
    if f.is_effectively_constant() {
        return Err(Failure::precondition(anyhow!("orbit search needs a non-constant forcing")));
    }
    let dynamics = Dynamics::new(spec, gradient, &f).map_err(Failure::precondition)?;
    let opts = problem.analysis.orbit_options(f.period());
    let ladder = periods.map_or_else(|| problem.analysis.periods.clone(), |n| vec![n]);
    let dir = out_dir(cli, &problem);
    let name = stem(config);

    let mut any_failed = false;
    let mut entries = Vec::new();
    for n in ladder {
        let outcome = find_limit_cycle(&dynamics, n, &opts).map_err(Failure::error)?;
        let entry = match outcome {
            OrbitOutcome::Converged(orbit) => {
                let checks = check_bounds(spec, &f, &orbit).map_err(Failure::error)?;
                let failed = checks.iter().filter(|c| !c.pass).count();
                any_failed |= failed > 0;
                let max_position = orbit.lp_norm(Quantity::Position, f64::INFINITY).map_err(Failure::error)?.value;
                let path = dir.join(format!("{name}.orbit_N{n}.csv"));
                write_atomic(&path, &orbit_csv(&orbit).map_err(Failure::error)?).map_err(Failure::error)?;
                if !cli.quiet {
                    println!(
                        "N = {n}: orbit found, max|x| = {}, {} of {} bound checks pass",
                        fmt(max_position),
                        checks.len() - failed,
                        checks.len()
                    );
                    for c in &checks {
                        println!("  {:<22} bound {}  measured {}  {}", c.name, fmt(c.bound), fmt(c.measured), if c.pass { "ok" } else { "FAIL" });
                    }
                }
                json!({
                    "periods": n,
                    "outcome": "converged",
                    "max_position": max_position,
                    "inside_domain": max_position <= spec.domain_radius,
                    "poincare_iterations": orbit.poincare_iterations,
                    "newton_steps": orbit.newton_steps,
                    "shooting_residual": orbit.shooting_residual,
                    "closure_residual": orbit.closure_residual,
                    "dynamics_residual": orbit.dynamics_residual,
                    "residuals_ok": orbit.residuals_ok(),
                    "orbit_csv": path.file_name().map(|s| s.to_string_lossy().into_owned()),
                    "checks": to_value(&checks),
                })
            }
            OrbitOutcome::Escaped { time, magnitude } => {
                if !cli.quiet {
                    println!("N = {n}: trajectory escaped at t = {} (|state| = {})", fmt(time), fmt(magnitude));
                }
                json!({ "periods": n, "outcome": "escaped", "time": time, "magnitude": magnitude })
            }
            OrbitOutcome::NotFound { iterations, residual } => {
                if !cli.quiet {
                    println!("N = {n}: no orbit found after {iterations} iterations (residual {})", fmt(residual));
                }
                json!({ "periods": n, "outcome": "not_found", "iterations": iterations, "residual": residual })
            }
        };
        entries.push(entry);
    }

    let verdict = if spec.potential.kind == PotentialKind::None {
        Value::Null
    } else {
        criterion(spec, &f).map(|r| to_value(&r)).unwrap_or(Value::Null)
    };
    let report = json!({
        "schema": SCHEMA,
        "amplitude": amplitude,
        "criteria": verdict,
        "verification": entries,
    });
    write_atomic(&dir.join(format!("{name}.verify.json")), &json_bytes(&report)).map_err(Failure::error)?;
    Ok(if any_failed { EXIT_BOUND_FAILURE } else { EXIT_OK })
}

/// `(ȳ, y*, parabolic bound, Lagrange bound)` for `A y^s - B y - C`.
pub fn rootbound_values(a: f64, b: f64, c: f64, s: f64) -> anyhow::Result<[f64; 4]> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(anyhow!("coefficients must be positive, got A = {a}, B = {b}, C = {c}"));
    }
    if !(s >= 2.0) {
        return Err(anyhow!("exponent must be at least 2, got {s}"));
    }
    let p = SofteningPoly::new(a, b, c, s)?;
    Ok([stationary_point(&p), positive_root(&p), parabolic_root_bound(&p)?, lagrange_root_bound(&p)])
}

pub fn rootbound(a: f64, b: f64, c: f64, s: f64, as_json: bool) -> Result<u8, Failure> {
    let [ybar, root, parabolic, lagrange] = rootbound_values(a, b, c, s).map_err(Failure::error)?;
    if as_json {
        let v = json!({
            "schema": SCHEMA,
            "coefficients": [a, b, c],
            "exponent": s,
            "stationary_point": ybar,
            "root": root,
            "parabolic_bound": parabolic,
            "lagrange_bound": lagrange,
        });
        print!("{}", String::from_utf8(json_bytes(&v)).expect("JSON is UTF-8"));
    } else {
        println!("P(y) = {a} y^{s} - {b} y - {c}");
        println!("stationary point  {ybar}");
        println!("positive root     {root}");
        println!("parabolic bound   {parabolic}");
        println!("Lagrange bound    {lagrange}");
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = sweep_grid(0.01, 0.2, 20, false).unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!((g[0], g[19]), (0.01, 0.2));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let g = sweep_grid(0.01, 1.0, 3, true).unwrap();
        assert!((g[1] - 0.1).abs() < 1e-15);
        assert!(sweep_grid(0.0, 1.0, 1, false).is_err());
        assert!(sweep_grid(1.0, 1.0, 5, false).is_err());
    }

    #[test]
    fn rootbound_lagrange_clamps_at_one() {
        let v = rootbound_values(1.0, 0.1, 0.1, 2.0).unwrap();
        assert_eq!(v[3], 1.0);
        assert!(v[0] <= v[1] && v[1] <= v[2]);
        assert!(rootbound_values(1.0, 0.0, 1.0, 5.0).is_err());
        assert!(rootbound_values(1.0, 1.0, 1.0, 1.5).is_err());
    }
}
