//! `gen-point`: one seeded point of a chosen space as JSON.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use plie_core::tensor_kit::CMat;
use serde::Serialize;

use crate::config::ConfigError;
use crate::sampling::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// `S(n,1)`: vectors `a`, `b`.
    Spin,
    /// `S(n,d)`: matrices `A` (n x d), `B` (d x n).
    S,
    /// `d` copies of `S(n,1)`.
    Tuple,
    /// `GL(l)` near the identity.
    Gl,
    /// The dual group near `(1, 1)`.
    Dual,
}

impl Space {
    const ALL: [(Space, &'static str); 5] =
        [(Space::Spin, "spin"), (Space::S, "s"), (Space::Tuple, "tuple"), (Space::Gl, "gl"), (Space::Dual, "dual")];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(s, _)| *s == self).expect("listed").1
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.iter().find(|(_, name)| *name == s).map(|(sp, _)| *sp).ok_or_else(|| {
            ConfigError::Invalid(format!("unknown space {s:?}; expected one of spin, s, tuple, gl, dual"))
        })
    }
}

#[derive(Clone, Debug)]
pub struct PointRequest {
    pub space: Space,
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub seed: u64,
    pub index: usize,
    pub radius: f64,
}

type Pair = [f64; 2];

fn pairs(v: &[C64]) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn rows(m: &CMat) -> Vec<Vec<Pair>> {
    (0..m.rows()).map(|i| pairs(&m.row_vec(i))).collect()
}

#[derive(Serialize)]
struct SpinJson {
    a: Vec<Pair>,
    b: Vec<Pair>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Body {
    Spin(SpinJson),
    S { a: Vec<Vec<Pair>>, b: Vec<Vec<Pair>> },
    Tuple { copies: Vec<SpinJson> },
    Gl { g: Vec<Vec<Pair>> },
    Dual { hplus: Vec<Vec<Pair>>, hminus: Vec<Vec<Pair>> },
}

#[derive(Serialize)]
struct PointJson {
    space: String,
    seed: u64,
    index: usize,
    radius: f64,
    #[serde(flatten)]
    body: Body,
}

impl PointRequest {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, v) in [("n", self.n), ("d", self.d), ("l", self.l)] {
            if v < 1 {
                return Err(ConfigError::Invalid(format!("{name} must be ≥ 1")));
            }
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(ConfigError::Invalid("radius must be > 0".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String, ConfigError> {
        self.validate()?;
        let mut s = Sampler::new(self.seed, &format!("gen-point/{}", self.space), self.index);
        let spin = |p: &plie_core::factorization::SpinPoint| SpinJson { a: pairs(p.a()), b: pairs(p.b()) };
        let body = match self.space {
            Space::Spin => Body::Spin(spin(&s.spin(self.n, self.radius))),
            Space::S => {
                let p = s.s_point(self.n, self.d, self.radius);
                Body::S { a: rows(p.a()), b: rows(p.b()) }
            }
            Space::Tuple => Body::Tuple { copies: s.tuple(self.n, self.d, self.radius).copies().iter().map(spin).collect() },
            Space::Gl => Body::Gl { g: rows(&s.near_identity(self.l, self.radius)) },
            Space::Dual => {
                let x = s.dual_near_identity(self.l, self.radius);
                let pair = plie_core::factorization::DualPair::from_free_coords(self.l, &x)
                    .map_err(|e| ConfigError::Invalid(e.to_string()))?;
                Body::Dual { hplus: rows(pair.hplus()), hminus: rows(pair.hminus()) }
            }
        };
        let point = PointJson { space: self.space.name().into(), seed: self.seed, index: self.index, radius: self.radius, body };
        let mut out = serde_json::to_string_pretty(&point).expect("point serializes");
        out.push('\n');
        Ok(out)
    }
}
