use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub residual: f64,
    pub digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Outcome of a residual sweep; `pass` holds exactly when
/// `max_residual <= tolerance`, and then `failures` is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub spec: String,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub pass: bool,
    pub failures: Vec<Failure>,
}

/// Outcome of one sample: a residual or an evaluation error, with the
/// digest of the sampled point.
#[derive(Clone, Debug)]
pub struct Sample {
    pub residual: Result<f64, String>,
    pub digest: String,
}

impl VerificationReport {
    /// Aggregates samples in index order. Errors and non-finite residuals
    /// count as `f64::MAX` so that the report stays valid JSON.
    pub fn from_samples(suite: &str, spec: &str, seed: u64, tolerance: f64, samples: Vec<Sample>) -> Self {
        let mut max_residual: f64 = 0.0;
        let mut failures = Vec::new();
        let count = samples.len();
        for (index, s) in samples.into_iter().enumerate() {
            let (residual, error) = match s.residual {
                Ok(r) if r.is_finite() => (r, None),
                Ok(_) => (f64::MAX, None),
                Err(e) => (f64::MAX, Some(e)),
            };
            max_residual = max_residual.max(residual);
            if !(residual <= tolerance) || error.is_some() {
                failures.push(Failure { index, residual, digest: s.digest, error });
            }
        }
        let pass = max_residual <= tolerance && failures.is_empty();
        Self { suite: suite.into(), spec: spec.into(), seed, samples: count, tolerance, max_residual, pass, failures }
    }

    pub fn has_errors(&self) -> bool {
        self.failures.iter().any(|f| f.error.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: Result<f64, String>) -> Sample {
        Sample { residual: r, digest: "d".into() }
    }

    #[test]
    fn pass_iff_below_tolerance() {
        let ok = VerificationReport::from_samples("x", "y", 1, 1e-3, vec![s(Ok(1e-4)), s(Ok(1e-3))]);
        assert!(ok.pass && ok.failures.is_empty() && ok.max_residual == 1e-3);
        let bad = VerificationReport::from_samples("x", "y", 1, 1e-3, vec![s(Ok(1e-4)), s(Ok(f64::NAN)), s(Err("boom".into()))]);
        assert!(!bad.pass);
        assert_eq!(bad.failures.iter().map(|f| f.index).collect::<Vec<_>>(), [1, 2]);
        assert!(bad.has_errors());
        assert!(serde_json::to_string(&bad).is_ok());
    }
}
