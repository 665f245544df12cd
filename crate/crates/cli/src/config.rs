//! Run configuration: command-line flags over an optional JSON file over
//! defaults, with `PLIE_SEED` between flags and file for the seed.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use plie_core::verify::DiffScheme;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "PLIE_SEED";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read config file {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed config file {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "jacobi")]
    Jacobi,
    #[serde(rename = "decouple-m")]
    DecoupleM,
    #[serde(rename = "decouple-F")]
    DecoupleF,
    #[serde(rename = "factorization")]
    Factorization,
    #[serde(rename = "ao-maps")]
    AoMaps,
    #[serde(rename = "moment")]
    Moment,
    #[serde(rename = "lemma4")]
    Lemma4,
    #[serde(rename = "symplectic")]
    Symplectic,
    #[serde(rename = "rank")]
    Rank,
    #[serde(rename = "zakrzewski")]
    Zakrzewski,
    #[serde(rename = "actions")]
    Actions,
    #[serde(rename = "all")]
    All,
}

impl Suite {
    /// Every suite that `all` runs, in report order.
    pub const EACH: [Suite; 11] = [
        Suite::Jacobi,
        Suite::DecoupleM,
        Suite::DecoupleF,
        Suite::Factorization,
        Suite::AoMaps,
        Suite::Moment,
        Suite::Lemma4,
        Suite::Symplectic,
        Suite::Rank,
        Suite::Zakrzewski,
        Suite::Actions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::DecoupleM => "decouple-m",
            Suite::DecoupleF => "decouple-F",
            Suite::Factorization => "factorization",
            Suite::AoMaps => "ao-maps",
            Suite::Moment => "moment",
            Suite::Lemma4 => "lemma4",
            Suite::Symplectic => "symplectic",
            Suite::Rank => "rank",
            Suite::Zakrzewski => "zakrzewski",
            Suite::Actions => "actions",
            Suite::All => "all",
        }
    }

    /// Sampling radius when none is configured: 1 for the global brackets,
    /// 0.3 for the locally defined maps.
    pub fn default_radius(self) -> f64 {
        match self {
            Suite::Jacobi | Suite::Zakrzewski => 1.0,
            _ => 0.3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::EACH.iter().map(|s| s.name()).chain(["all"]).collect();
                invalid(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Parses `re,im` or a bare real part.
pub fn parse_complex(s: &str) -> Result<C64, ConfigError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| invalid(format!("cannot parse {s:?} as re,im")));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(invalid(format!("cannot parse {s:?} as re,im"))),
    }
}

/// Every field optional: one layer of configuration.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub suite: Option<Suite>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub l: Option<usize>,
    pub kappa: Option<[f64; 2]>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub radius: Option<f64>,
    pub tol_exact: Option<f64>,
    pub tol_fd: Option<f64>,
    pub fd_step: Option<f64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Json { path: path.into(), source })
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            suite: self.suite.or(lower.suite),
            n: self.n.or(lower.n),
            d: self.d.or(lower.d),
            l: self.l.or(lower.l),
            kappa: self.kappa.or(lower.kappa),
            seed: self.seed.or(lower.seed),
            samples: self.samples.or(lower.samples),
            radius: self.radius.or(lower.radius),
            tol_exact: self.tol_exact.or(lower.tol_exact),
            tol_fd: self.tol_fd.or(lower.tol_fd),
            fd_step: self.fd_step.or(lower.fd_step),
            out: self.out.or(lower.out),
            threads: self.threads.or(lower.threads),
        }
    }

    /// The layer holding `PLIE_SEED`, if set.
    pub fn from_env_value(value: Option<&str>) -> Result<Self, ConfigError> {
        let seed = value
            .map(|v| v.trim().parse::<u64>().map_err(|_| invalid(format!("{SEED_ENV}={v:?} is not an unsigned integer"))))
            .transpose()?;
        Ok(ConfigLayer { seed, ..Default::default() })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub suite: Suite,
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub kappa: C64,
    pub seed: u64,
    pub samples: usize,
    /// `None` selects the per-suite default.
    pub radius: Option<f64>,
    pub tol_exact: f64,
    pub tol_fd: f64,
    pub fd_step: f64,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            n: 2,
            d: 2,
            l: 3,
            kappa: C64::new(1.0, 0.0),
            seed: 0,
            samples: 20,
            radius: None,
            tol_exact: 1e-10,
            tol_fd: 1e-6,
            fd_step: 1e-5,
            out: None,
            threads: None,
        }
    }
}

impl RunConfig {
    /// Fills unset fields from the defaults and validates the result.
    pub fn resolve(layer: ConfigLayer) -> Result<Self, ConfigError> {
        let base = RunConfig::default();
        let cfg = RunConfig {
            suite: layer.suite.unwrap_or(base.suite),
            n: layer.n.unwrap_or(base.n),
            d: layer.d.unwrap_or(base.d),
            l: layer.l.unwrap_or(base.l),
            kappa: layer.kappa.map(|[re, im]| C64::new(re, im)).unwrap_or(base.kappa),
            seed: layer.seed.unwrap_or(base.seed),
            samples: layer.samples.unwrap_or(base.samples),
            radius: layer.radius,
            tol_exact: layer.tol_exact.unwrap_or(base.tol_exact),
            tol_fd: layer.tol_fd.unwrap_or(base.tol_fd),
            fd_step: layer.fd_step.unwrap_or(base.fd_step),
            out: layer.out,
            threads: layer.threads,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [("n", self.n), ("d", self.d), ("l", self.l), ("samples", self.samples)] {
            if v < 1 {
                return Err(invalid(format!("{name} must be ≥ 1")));
            }
        }
        if self.threads == Some(0) {
            return Err(invalid("threads must be ≥ 1"));
        }
        if !self.kappa.is_finite() || self.kappa.norm() == 0.0 {
            return Err(invalid("kappa must be finite and non-zero"));
        }
        if let Some(r) = self.radius {
            if !(r.is_finite() && r > 0.0) {
                return Err(invalid("radius must be > 0"));
            }
        }
        for (name, t) in [("tol-exact", self.tol_exact), ("tol-fd", self.tol_fd)] {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid(format!("{name} must be > 0")));
            }
        }
        DiffScheme::new(self.fd_step, true, plie_core::verify::Direction::RealAxis)
            .map_err(|e| invalid(e.to_string()))?;
        Ok(())
    }

    pub fn radius_for(&self, suite: Suite) -> f64 {
        self.radius.unwrap_or_else(|| suite.default_radius())
    }

    pub fn scheme(&self) -> DiffScheme {
        DiffScheme::new(self.fd_step, true, plie_core::verify::Direction::RealAxis).expect("validated step")
    }
}
