//! Pipeline configuration (TOML).

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::heteroclinic::OrbitConfig;
use crate::manifold::ManifoldConfig;
use crate::rpa::NewtonOptions;

/// A number, or `"auto"` for a value chosen by `tune`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum Auto {
    #[default]
    Auto,
    Value(f64),
}

impl Auto {
    pub fn value(self) -> Option<f64> {
        match self {
            Auto::Auto => None,
            Auto::Value(v) => Some(v),
        }
    }
}

impl fmt::Display for Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Auto::Auto => f.write_str("auto"),
            Auto::Value(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Auto {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Auto::Auto => s.serialize_str("auto"),
            Auto::Value(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Auto {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Auto::Value(v)),
            Raw::Text(t) if t == "auto" => Ok(Auto::Auto),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected a number or \"auto\", got {t:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ManifoldSection {
    #[serde(rename = "K")]
    pub k: usize,
    pub nu: f64,
    pub scale_u: Auto,
    pub scale_s: Auto,
    /// Last-order coefficient magnitude aimed at when a scale is tuned.
    pub target_u: f64,
    pub target_s: f64,
    #[serde(rename = "R_factor")]
    pub r_factor: f64,
}

impl Default for ManifoldSection {
    fn default() -> Self {
        ManifoldSection {
            k: 25,
            nu: 1.0625,
            scale_u: Auto::Auto,
            scale_s: Auto::Auto,
            target_u: 1e-16,
            target_s: 1e-12,
            r_factor: 10.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrbitSection {
    #[serde(rename = "K")]
    pub k: usize,
    pub mu: f64,
    pub tau: Auto,
    pub alpha0: Auto,
    #[serde(rename = "R_factor")]
    pub r_factor: f64,
    pub max_endpoint_distance: f64,
}

impl Default for OrbitSection {
    fn default() -> Self {
        OrbitSection {
            k: 120,
            mu: 1.05,
            tau: Auto::Auto,
            alpha0: Auto::Auto,
            r_factor: 10.0,
            max_endpoint_distance: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NewtonSection {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonSection {
    fn default() -> Self {
        NewtonSection {
            tol: 1e-12,
            max_iter: 30,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub report: String,
    pub timings: String,
    pub csv: String,
    pub csv_points: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: PathBuf::from("radii-out"),
            report: "report.json".into(),
            timings: "timings.json".into(),
            csv: "trajectory.csv".into(),
            csv_points: 1000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub manifold: ManifoldSection,
    pub orbit: OrbitSection,
    pub newton: NewtonSection,
    pub output: OutputSection,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: PipelineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.manifold;
        let o = &self.orbit;
        if m.k < 2 || o.k < 2 {
            return Err(Error::Config(format!("orders must be at least 2, got K = {} and {}", m.k, o.k)));
        }
        if !(m.nu > 1.0) {
            return Err(Error::Config(format!("manifold nu must exceed 1, got {}", m.nu)));
        }
        if !(o.mu >= 1.0) {
            return Err(Error::Config(format!("orbit mu must be at least 1, got {}", o.mu)));
        }
        for (name, v) in [
            ("manifold.target_u", m.target_u),
            ("manifold.target_s", m.target_s),
            ("manifold.R_factor", m.r_factor),
            ("orbit.R_factor", o.r_factor),
            ("orbit.max_endpoint_distance", o.max_endpoint_distance),
            ("newton.tol", self.newton.tol),
        ] {
            positive(name, v)?;
        }
        for (name, a) in [("manifold.scale_u", m.scale_u), ("manifold.scale_s", m.scale_s), ("orbit.tau", o.tau)] {
            if let Some(v) = a.value() {
                positive(name, v)?;
            }
        }
        if self.newton.max_iter == 0 {
            return Err(Error::Config("newton.max_iter must be positive".into()));
        }
        Ok(())
    }

    pub fn newton(&self) -> NewtonOptions {
        NewtonOptions {
            tol: self.newton.tol,
            max_iter: self.newton.max_iter,
        }
    }

    /// Manifold settings for the unstable (`true`) or stable side.
    pub fn manifold_config(&self, unstable: bool) -> ManifoldConfig {
        let m = &self.manifold;
        let (scale, target) = if unstable { (m.scale_u, m.target_u) } else { (m.scale_s, m.target_s) };
        ManifoldConfig {
            k: m.k,
            nu: m.nu,
            scale: scale.value(),
            scale_target: target,
            r_factor: m.r_factor,
            newton: self.newton(),
        }
    }

    pub fn orbit_config(&self) -> OrbitConfig {
        let o = &self.orbit;
        OrbitConfig {
            k: o.k,
            mu: o.mu,
            tau: o.tau.value(),
            alpha0: o.alpha0.value(),
            r_factor: o.r_factor,
            newton: self.newton(),
            max_endpoint_distance: o.max_endpoint_distance,
            ..OrbitConfig::default()
        }
    }

    /// True when `tune` has nothing left to resolve.
    pub fn is_resolved(&self) -> bool {
        [self.manifold.scale_u, self.manifold.scale_s, self.orbit.tau, self.orbit.alpha0]
            .iter()
            .all(|a| a.value().is_some())
    }
}
