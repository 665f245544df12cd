use std::collections::BTreeMap;

use plie_core::verify::VerificationReport;
use serde::Serialize;

use crate::config::RunConfig;

/// One residual sweep inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub report: VerificationReport,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, serde_json::Value>,
}

impl Check {
    /// `max_residual / tolerance`, with a zero tolerance meaning "must be exactly 0".
    pub fn normalized(&self) -> f64 {
        let r = &self.report;
        if r.tolerance > 0.0 {
            r.max_residual / r.tolerance
        } else if r.max_residual == 0.0 {
            0.0
        } else {
            f64::MAX
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub kappa: [f64; 2],
    pub radius: Option<f64>,
    pub tol_exact: f64,
    pub tol_fd: f64,
    pub fd_step: f64,
}

impl From<&RunConfig> for Params {
    fn from(c: &RunConfig) -> Self {
        Self {
            n: c.n,
            d: c.d,
            l: c.l,
            kappa: [c.kappa.re, c.kappa.im],
            radius: c.radius,
            tol_exact: c.tol_exact,
            tol_fd: c.tol_fd,
            fd_step: c.fd_step,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunFailure {
    pub check: String,
    pub index: usize,
    pub residual: f64,
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Top-level report. Each check carries its own tolerance, so the
/// top-level residual is the largest `max_residual / tolerance` and the
/// top-level tolerance is 1.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub params: Params,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub pass: bool,
    pub failures: Vec<RunFailure>,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(cfg: &RunConfig, checks: Vec<Check>) -> Self {
        let max_residual = checks.iter().map(Check::normalized).fold(0.0, f64::max);
        let failures: Vec<RunFailure> = checks
            .iter()
            .flat_map(|c| {
                c.report.failures.iter().map(|f| RunFailure {
                    check: c.name.clone(),
                    index: f.index,
                    residual: f.residual,
                    digest: f.digest.clone(),
                    error: f.error.clone(),
                })
            })
            .collect();
        let pass = checks.iter().all(|c| c.report.pass);
        Self {
            suite: cfg.suite.name().into(),
            params: cfg.into(),
            seed: cfg.seed,
            samples: cfg.samples,
            tolerance: 1.0,
            max_residual,
            pass,
            failures,
            checks,
        }
    }

    pub fn has_errors(&self) -> bool {
        self.failures.iter().any(|f| f.error.is_some())
    }

    /// 0 on pass, 1 on a residual above tolerance, 3 on an evaluation error.
    pub fn exit_code(&self) -> i32 {
        if self.has_errors() {
            3
        } else if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
