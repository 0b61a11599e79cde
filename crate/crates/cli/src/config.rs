//! TOML run configuration.
//!
//! ```toml
//! [system]
//! mass = [[1.0]]
//! damping = [[0.1]]
//! stiffness = [[1.1]]
//! domain_radius = 1.0
//!
//! [potential]
//! kind = "hardening"      # hardening | softening | none
//! u0 = 1.0
//! r = 4.0
//! U0 = 1.0
//! gradient = "cubic"      # zero | cubic | radial_cubic, needed by `verify`
//!
//! [forcing]
//! omega = 1.0             # or period = ...
//! [[forcing.harmonics]]
//! n = 1
//! sin = [1.0]
//!
//! [analysis]
//! periods = [1, 2, 4]
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use orbitbound::criteria::SweepParam;
use orbitbound::forcing::Harmonic;
use orbitbound::verify::{ConcreteGradient, OrbitOptions};
use orbitbound::{PotentialEnvelope, PotentialKind, SystemSpec, TrigForcing};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSection,
    pub potential: PotentialSection,
    pub forcing: ForcingSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub mass: Vec<Vec<f64>>,
    pub damping: Vec<Vec<f64>>,
    pub stiffness: Vec<Vec<f64>>,
    #[serde(default = "unit_radius")]
    pub domain_radius: f64,
}

fn unit_radius() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientChoice {
    Zero,
    Cubic,
    RadialCubic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    pub kind: PotentialKind,
    #[serde(default)]
    pub u0: f64,
    #[serde(default)]
    pub r: f64,
    #[serde(rename = "U0", default)]
    pub grad_bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gradient: Option<GradientChoice>,
    /// Coefficient of the cubic gradient; defaults to `u0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<Vec<f64>>,
    #[serde(default)]
    pub harmonics: Vec<HarmonicSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicSection {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cos: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sin: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    #[serde(default = "default_periods")]
    pub periods: Vec<u32>,
    /// `|x0|` in the sup-norm bound; defaults to the domain radius.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0_magnitude: Option<f64>,
    /// Integrator step; rounded so an even number of steps fits in a period.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

fn default_periods() -> Vec<u32> {
    vec![1, 2, 4]
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self {
            periods: default_periods(),
            x0_magnitude: None,
            dt: None,
            max_iterations: None,
            initial_state: None,
            output_dir: None,
            sweep: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub param: String,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub log: bool,
}

/// A schema or consistency error tied to a field path.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

/// Everything a command needs, checked for consistency.
#[derive(Debug, Clone)]
pub struct Problem {
    pub spec: SystemSpec,
    pub forcing: TrigForcing,
    pub gradient: Option<ConcreteGradient>,
    pub analysis: AnalysisSection,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let de = toml::Deserializer::parse(text).map_err(|e| ConfigError::at("", e.to_string()))?;
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." { String::new() } else { path };
            ConfigError::at(path, e.into_inner().message().to_string())
        })
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        use anyhow::Context;
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable as TOML")
    }

    pub fn build(&self) -> Result<Problem, ConfigError> {
        let sys = &self.system;
        let d = sys.mass.len();
        if d == 0 {
            return Err(ConfigError::at("system.mass", "matrix is empty"));
        }
        let mass = matrix("system.mass", &sys.mass, d)?;
        let damping = matrix("system.damping", &sys.damping, d)?;
        let stiffness = matrix("system.stiffness", &sys.stiffness, d)?;
        if !(sys.domain_radius > 0.0) {
            return Err(ConfigError::at("system.domain_radius", "must be positive"));
        }

        let pot = &self.potential;
        let envelope = PotentialEnvelope { kind: pot.kind, u0: pot.u0, r: pot.r, grad_bound: pot.grad_bound };
        let spec = SystemSpec::new(mass, damping, stiffness, envelope)
            .map_err(|e| ConfigError::at("system", e.to_string()))?
            .with_domain_radius(sys.domain_radius);

        let delta = pot.delta.unwrap_or(pot.u0);
        let sign = if pot.kind == PotentialKind::Softening { -1.0 } else { 1.0 };
        let gradient = pot.gradient.map(|g| match g {
            GradientChoice::Zero => ConcreteGradient::Zero,
            GradientChoice::Cubic => ConcreteGradient::Cubic { delta, sign },
            GradientChoice::RadialCubic => ConcreteGradient::RadialCubic { delta, sign },
        });

        let forcing = self.forcing.build(d)?;
        self.analysis.check(d)?;
        Ok(Problem { spec, forcing, gradient, analysis: self.analysis.clone() })
    }
}

fn matrix(path: &str, rows: &[Vec<f64>], d: usize) -> Result<DMatrix<f64>, ConfigError> {
    if rows.len() != d {
        return Err(ConfigError::at(path, format!("has {} rows, expected {d}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != d {
            return Err(ConfigError::at(format!("{path}[{i}]"), format!("has {} entries, expected {d}", row.len())));
        }
    }
    Ok(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
}

fn vector(path: String, v: &Option<Vec<f64>>, d: usize) -> Result<Vec<f64>, ConfigError> {
    match v {
        None => Ok(vec![0.0; d]),
        Some(v) if v.len() == d => Ok(v.clone()),
        Some(v) => Err(ConfigError::at(path, format!("has {} entries, expected {d}", v.len()))),
    }
}

impl ForcingSection {
    fn build(&self, d: usize) -> Result<TrigForcing, ConfigError> {
        let period = match (self.period, self.omega) {
            (Some(t), None) if t > 0.0 => t,
            (None, Some(w)) if w > 0.0 => 2.0 * std::f64::consts::PI / w,
            (Some(_), None) => return Err(ConfigError::at("forcing.period", "must be positive")),
            (None, Some(_)) => return Err(ConfigError::at("forcing.omega", "must be positive")),
            _ => return Err(ConfigError::at("forcing", "give exactly one of period, omega")),
        };
        let mean = vector("forcing.mean".into(), &self.mean, d)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut harmonics = Vec::with_capacity(self.harmonics.len());
        for (i, h) in self.harmonics.iter().enumerate() {
            let path = format!("forcing.harmonics[{i}]");
            if h.n == 0 {
                return Err(ConfigError::at(format!("{path}.n"), "harmonic index must be at least 1; use mean"));
            }
            if !seen.insert(h.n) {
                return Err(ConfigError::at(format!("{path}.n"), format!("harmonic {} listed twice", h.n)));
            }
            harmonics.push(Harmonic {
                n: h.n,
                cos: vector(format!("{path}.cos"), &h.cos, d)?,
                sin: vector(format!("{path}.sin"), &h.sin, d)?,
            });
        }
        TrigForcing::new(period, mean, harmonics).map_err(|e| ConfigError::at("forcing", e.to_string()))
    }
}

impl AnalysisSection {
    fn check(&self, d: usize) -> Result<(), ConfigError> {
        if self.periods.is_empty() {
            return Err(ConfigError::at("analysis.periods", "must list at least one period multiplier"));
        }
        if let Some(i) = self.periods.iter().position(|&n| n == 0) {
            return Err(ConfigError::at(format!("analysis.periods[{i}]"), "must be at least 1"));
        }
        if matches!(self.x0_magnitude, Some(x) if !(x >= 0.0)) {
            return Err(ConfigError::at("analysis.x0_magnitude", "must be nonnegative"));
        }
        if matches!(self.dt, Some(dt) if !(dt > 0.0)) {
            return Err(ConfigError::at("analysis.dt", "must be positive"));
        }
        if self.max_iterations == Some(0) {
            return Err(ConfigError::at("analysis.max_iterations", "must be at least 1"));
        }
        if let Some(z) = &self.initial_state {
            if z.len() != 2 * d {
                return Err(ConfigError::at(
                    "analysis.initial_state",
                    format!("has {} entries, expected {} (positions then velocities)", z.len(), 2 * d),
                ));
            }
        }
        if let Some(s) = &self.sweep {
            s.param.parse::<SweepParam>().map_err(|e| ConfigError::at("analysis.sweep.param", e.to_string()))?;
            if s.points < 2 {
                return Err(ConfigError::at("analysis.sweep.points", "need at least 2 points"));
            }
        }
        Ok(())
    }

    pub fn x0_magnitude_or(&self, radius: f64) -> f64 {
        self.x0_magnitude.unwrap_or(radius)
    }

    pub fn orbit_options(&self, period: f64) -> OrbitOptions {
        let mut opts = OrbitOptions::default();
        if let Some(dt) = self.dt {
            let steps = (period / dt).round().max(4.0) as usize;
            opts.steps_per_period = steps + steps % 2;
        }
        if let Some(m) = self.max_iterations {
            opts.max_iterations = m;
        }
        opts.initial_state = self.initial_state.clone();
        opts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUNDLED: [&str; 3] = [
        include_str!("../configs/duffing_hard.toml"),
        include_str!("../configs/duffing_soft.toml"),
        include_str!("../configs/linear_2d.toml"),
    ];

    #[test]
    fn bundled_configs_build_and_round_trip() {
        for text in BUNDLED {
            let cfg = RunConfig::parse(text).unwrap();
            cfg.build().unwrap();
            let again = RunConfig::parse(&cfg.to_toml()).unwrap();
            assert_eq!(again, cfg);
            assert_eq!(again.to_toml(), cfg.to_toml());
        }
    }

    #[test]
    fn unknown_field_reports_its_path() {
        let text = BUNDLED[0].replace("domain_radius", "domain_radios");
        let err = RunConfig::parse(&text).unwrap_err();
        assert_eq!(err.path, "system.domain_radios");
        assert!(err.message.contains("domain_radios"), "{err}");
    }

    #[test]
    fn wrong_type_reports_nested_path() {
        let text = BUNDLED[0].replace("n = 1", "n = \"one\"");
        let err = RunConfig::parse(&text).unwrap_err();
        assert_eq!(err.path, "forcing.harmonics[0].n", "{err}");
    }

    #[test]
    fn shape_errors_name_the_field() {
        let mut cfg = RunConfig::parse(BUNDLED[2]).unwrap();
        cfg.system.damping[1].pop();
        assert_eq!(cfg.build().unwrap_err().path, "system.damping[1]");

        let mut cfg = RunConfig::parse(BUNDLED[0]).unwrap();
        cfg.forcing.harmonics[0].sin = Some(vec![1.0, 2.0]);
        assert_eq!(cfg.build().unwrap_err().path, "forcing.harmonics[0].sin");

        let mut cfg = RunConfig::parse(BUNDLED[0]).unwrap();
        cfg.forcing.period = Some(1.0);
        assert_eq!(cfg.build().unwrap_err().path, "forcing");
    }

    #[test]
    fn dt_rounds_to_even_steps() {
        let a = AnalysisSection { dt: Some(0.01), ..AnalysisSection::default() };
        let opts = a.orbit_options(1.0);
        assert_eq!(opts.steps_per_period, 100);
        let a = AnalysisSection { dt: Some(1.0 / 101.0), ..AnalysisSection::default() };
        assert_eq!(a.orbit_options(1.0).steps_per_period, 102);
    }
}
