//! Poisson brackets evaluated as bivectors: the matrix of coordinate brackets
//! `{x_p, x_q}` at a point, in a fixed coordinate chart.

mod dual_bases;
mod group;
mod s_family;
pub mod tensor_form;
mod zak;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::decoupling::{SPoint, SpinTuple};
use crate::error::{Error, Result};
use crate::factorization::{DualPair, SpinPoint};
use crate::tensor_kit::{CMat, ZERO};

pub use dual_bases::{dual_bases, pairing, DualBases};
pub(crate) use group::dual_coordinate_positions;
pub use group::{bivector_double, bivector_dual, bivector_gl_mult, bivector_sts, dual_dependent_bracket};
pub use s_family::{bivector_ao, bivector_s, bivector_s1_product, AoKind};
pub use zak::{bivector_zak_complex, bivector_zak_real};

/// Coordinate chart of a bivector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `A(i,alpha)` row-major, then `B(alpha,i)` row-major.
    S { n: usize, d: usize },
    /// `d` copies of `S(n,1)`, laid out as the `S(n,d)` chart with
    /// `a(i,alpha)` and `b(alpha,i)`.
    SpinProduct { n: usize, d: usize },
    /// `g(i,j)` row-major.
    Gl { l: usize },
    /// `u(i,j)` then `v(i,j)`.
    Double { l: usize },
    /// Strictly upper `h+`, diagonal `h+`, strictly lower `h-`.
    GlStar { l: usize },
    /// `a(1..n)` then `b(1..n)`.
    C2n { n: usize },
}

impl Chart {
    pub fn dim(&self) -> usize {
        match *self {
            Chart::S { n, d } | Chart::SpinProduct { n, d } => 2 * n * d,
            Chart::Gl { l } | Chart::GlStar { l } => l * l,
            Chart::Double { l } => 2 * l * l,
            Chart::C2n { n } => 2 * n,
        }
    }

    /// 1-based coordinate labels in chart order.
    pub fn labels(&self) -> Vec<String> {
        let grid = |name: &str, rows: usize, cols: usize| -> Vec<String> {
            (1..=rows).flat_map(|i| (1..=cols).map(move |j| (i, j))).map(|(i, j)| format!("{name}({i},{j})")).collect()
        };
        match *self {
            Chart::S { n, d } => [grid("A", n, d), grid("B", d, n)].concat(),
            Chart::SpinProduct { n, d } => [grid("a", n, d), grid("b", d, n)].concat(),
            Chart::Gl { l } => grid("g", l, l),
            Chart::Double { l } => [grid("u", l, l), grid("v", l, l)].concat(),
            Chart::GlStar { l } => {
                let mut out = Vec::with_capacity(l * l);
                for i in 1..=l {
                    for j in i + 1..=l {
                        out.push(format!("h+({i},{j})"));
                    }
                }
                out.extend((1..=l).map(|i| format!("h+({i},{i})")));
                for i in 1..=l {
                    for j in 1..i {
                        out.push(format!("h-({i},{j})"));
                    }
                }
                out
            }
            Chart::C2n { n } => (1..=n).map(|i| format!("a({i})")).chain((1..=n).map(|i| format!("b({i})"))).collect(),
        }
    }
}

/// Matrix of coordinate brackets; `matrix[(p,q)] = {x_p, x_q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    chart: Chart,
    matrix: CMat,
}

impl Bivector {
    /// Builds the bivector from its strict upper triangle; the lower triangle
    /// is the exact negation.
    pub(crate) fn from_upper(chart: Chart, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let dim = chart.dim();
        let mut matrix = CMat::zeros(dim, dim);
        for p in 0..dim {
            for q in p + 1..dim {
                let z = f(p, q);
                matrix[(p, q)] = z;
                matrix[(q, p)] = -z;
            }
        }
        Self { chart, matrix }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn get(&self, p: usize, q: usize) -> C64 {
        self.matrix[(p, q)]
    }
}

/// Holomorphic function of one variable with a caller-supplied derivative.
#[derive(Clone)]
pub struct HoloFn1 {
    name: String,
    eval: Arc<dyn Fn(C64) -> C64 + Send + Sync>,
    deriv: Arc<dyn Fn(C64) -> C64 + Send + Sync>,
}

impl fmt::Debug for HoloFn1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoloFn1({})", self.name)
    }
}

/// Probe points for derivative validation.
const PROBES: [C64; 4] = [C64::new(0.0, 0.0), C64::new(0.3, 0.0), C64::new(0.0, 0.2), C64::new(-0.25, 0.1)];

impl HoloFn1 {
    /// Checks `deriv` against a Richardson-extrapolated central difference of
    /// `eval` to relative `1e-6` at a few probe points.
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(C64) -> C64 + Send + Sync + 'static,
        deriv: impl Fn(C64) -> C64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f = Self { name: name.into(), eval: Arc::new(eval), deriv: Arc::new(deriv) };
        for t in PROBES {
            let h = 1e-3;
            let central = |h: f64| -> Result<C64> { Ok((f.eval(t + h)? - f.eval(t - h)?) / (2.0 * h)) };
            let fd = (central(h / 2.0)? * 4.0 - central(h)?) / 3.0;
            let exact = f.deriv(t)?;
            if (fd - exact).norm() > 1e-6 * exact.norm().max(1.0) {
                return Err(Error::DerivativeMismatch {
                    t: t.to_string(),
                    detail: format!("{}: supplied {exact}, finite difference {fd}", f.name),
                });
            }
        }
        Ok(f)
    }

    /// `c_0 + c_1 t + c_2 t^2 + ...`
    pub fn polynomial(coeffs: &[C64]) -> Self {
        let c = coeffs.to_vec();
        let dc: Vec<C64> = coeffs.iter().enumerate().skip(1).map(|(k, &z)| z * k as f64).collect();
        let horner = |c: &[C64], t: C64| c.iter().rev().fold(ZERO, |acc, &z| acc * t + z);
        let name = format!("poly{:?}", coeffs.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>());
        Self { name, eval: Arc::new(move |t| horner(&c, t)), deriv: Arc::new(move |t| horner(&dc, t)) }
    }

    pub fn constant(c: C64) -> Self {
        Self::polynomial(&[c])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: C64) -> Result<C64> {
        let z = (self.eval)(t);
        if z.is_finite() { Ok(z) } else { Err(Error::Evaluation(format!("{} at {t}", self.name))) }
    }

    pub fn deriv(&self, t: C64) -> Result<C64> {
        let z = (self.deriv)(t);
        if z.is_finite() { Ok(z) } else { Err(Error::Evaluation(format!("{}' at {t}", self.name))) }
    }
}

/// Which Poisson structure to evaluate, with its parameters.
#[derive(Clone, Debug)]
pub enum BracketSpec {
    S { kappa: C64, n: usize, d: usize },
    /// Product of `d` copies of the `S(n,1)` bracket.
    S1Product { kappa: C64, n: usize, d: usize },
    AoPlus { kappa: C64, n: usize, d: usize },
    AoMinus { kappa: C64, n: usize, d: usize },
    Prime { kappa: C64, n: usize, d: usize },
    GlMult { kappa: C64, l: usize },
    Double { kappa: C64, l: usize },
    DualGroup { kappa: C64, l: usize },
    Sts { kappa: C64, l: usize },
    ZakC { kappa: C64, n: usize, f: HoloFn1, g: HoloFn1 },
    ZakR { epsilon: f64, n: usize, f: HoloFn1, g: HoloFn1 },
}

impl BracketSpec {
    pub fn validate(&self) -> Result<()> {
        let sizes: &[usize] = match self {
            BracketSpec::S { n, d, .. }
            | BracketSpec::S1Product { n, d, .. }
            | BracketSpec::AoPlus { n, d, .. }
            | BracketSpec::AoMinus { n, d, .. }
            | BracketSpec::Prime { n, d, .. } => &[*n, *d],
            BracketSpec::GlMult { l, .. }
            | BracketSpec::Double { l, .. }
            | BracketSpec::DualGroup { l, .. }
            | BracketSpec::Sts { l, .. } => &[*l],
            BracketSpec::ZakC { n, .. } | BracketSpec::ZakR { n, .. } => &[*n],
        };
        if sizes.contains(&0) {
            return Err(Error::InvalidParameter("sizes must be >= 1".into()));
        }
        match self {
            BracketSpec::ZakR { epsilon, .. } => {
                if *epsilon == 0.0 || !epsilon.is_finite() {
                    return Err(Error::InvalidParameter("epsilon must be non-zero".into()));
                }
            }
            _ => {
                let k = self.kappa();
                if k.norm() == 0.0 || !k.is_finite() {
                    return Err(Error::InvalidParameter("kappa must be non-zero".into()));
                }
            }
        }
        Ok(())
    }

    /// The coupling constant; for the real Zakrzewski bracket this is the
    /// equivalent complex constant `-2 i epsilon`.
    pub fn kappa(&self) -> C64 {
        match self {
            BracketSpec::S { kappa, .. }
            | BracketSpec::S1Product { kappa, .. }
            | BracketSpec::AoPlus { kappa, .. }
            | BracketSpec::AoMinus { kappa, .. }
            | BracketSpec::Prime { kappa, .. }
            | BracketSpec::GlMult { kappa, .. }
            | BracketSpec::Double { kappa, .. }
            | BracketSpec::DualGroup { kappa, .. }
            | BracketSpec::Sts { kappa, .. }
            | BracketSpec::ZakC { kappa, .. } => *kappa,
            BracketSpec::ZakR { epsilon, .. } => C64::new(0.0, -2.0 * epsilon),
        }
    }

    pub fn chart(&self) -> Chart {
        match *self {
            BracketSpec::S { n, d, .. }
            | BracketSpec::AoPlus { n, d, .. }
            | BracketSpec::AoMinus { n, d, .. }
            | BracketSpec::Prime { n, d, .. } => Chart::S { n, d },
            BracketSpec::S1Product { n, d, .. } => Chart::SpinProduct { n, d },
            BracketSpec::GlMult { l, .. } | BracketSpec::Sts { l, .. } => Chart::Gl { l },
            BracketSpec::Double { l, .. } => Chart::Double { l },
            BracketSpec::DualGroup { l, .. } => Chart::GlStar { l },
            BracketSpec::ZakC { n, .. } | BracketSpec::ZakR { n, .. } => Chart::C2n { n },
        }
    }

    /// True when every entry is a polynomial of degree at most 2 in the chart
    /// coordinates, so that unit-step central differences are exact.
    pub fn is_quadratic(&self) -> bool {
        !matches!(self, BracketSpec::DualGroup { .. } | BracketSpec::ZakC { .. } | BracketSpec::ZakR { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            BracketSpec::S { .. } => "S",
            BracketSpec::S1Product { .. } => "S1Product",
            BracketSpec::AoPlus { .. } => "AOplus",
            BracketSpec::AoMinus { .. } => "AOminus",
            BracketSpec::Prime { .. } => "Prime",
            BracketSpec::GlMult { .. } => "GLmult",
            BracketSpec::Double { .. } => "Double",
            BracketSpec::DualGroup { .. } => "DualGroup",
            BracketSpec::Sts { .. } => "STS",
            BracketSpec::ZakC { .. } => "ZakC",
            BracketSpec::ZakR { .. } => "ZakR",
        }
    }

    /// Compact human-readable summary used in reports.
    pub fn summary(&self) -> String {
        let k = self.kappa();
        let kappa = format!("kappa=({},{})", k.re, k.im);
        match self {
            BracketSpec::S { n, d, .. }
            | BracketSpec::S1Product { n, d, .. }
            | BracketSpec::AoPlus { n, d, .. }
            | BracketSpec::AoMinus { n, d, .. }
            | BracketSpec::Prime { n, d, .. } => format!("{} n={n} d={d} {kappa}", self.name()),
            BracketSpec::GlMult { l, .. }
            | BracketSpec::Double { l, .. }
            | BracketSpec::DualGroup { l, .. }
            | BracketSpec::Sts { l, .. } => format!("{} l={l} {kappa}", self.name()),
            BracketSpec::ZakC { n, f, g, .. } => format!("ZakC n={n} {kappa} F={} G={}", f.name(), g.name()),
            BracketSpec::ZakR { n, epsilon, f, g } => {
                format!("ZakR n={n} epsilon={epsilon} F={} G={}", f.name(), g.name())
            }
        }
    }

    /// Evaluates the bracket at the point with chart coordinates `x`.
    pub fn evaluate(&self, x: &[C64]) -> Result<Bivector> {
        self.validate()?;
        let dim = self.chart().dim();
        if x.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} coordinates for a chart of dimension {dim}", x.len())));
        }
        match self {
            BracketSpec::S { kappa, n, d } => bivector_s(*kappa, &SPoint::from_coords(*n, *d, x)?),
            BracketSpec::S1Product { kappa, n, d } => bivector_s1_product(*kappa, &SpinTuple::from_coords(*n, *d, x)?),
            BracketSpec::AoPlus { kappa, n, d } => bivector_ao(AoKind::Plus, *kappa, &SPoint::from_coords(*n, *d, x)?),
            BracketSpec::AoMinus { kappa, n, d } => {
                bivector_ao(AoKind::Minus, *kappa, &SPoint::from_coords(*n, *d, x)?)
            }
            BracketSpec::Prime { kappa, n, d } => bivector_ao(AoKind::Prime, *kappa, &SPoint::from_coords(*n, *d, x)?),
            BracketSpec::GlMult { kappa, l } => bivector_gl_mult(*kappa, &CMat::new(*l, *l, x.to_vec())?),
            BracketSpec::Double { kappa, l } => {
                let ll = l * l;
                bivector_double(*kappa, &CMat::new(*l, *l, x[..ll].to_vec())?, &CMat::new(*l, *l, x[ll..].to_vec())?)
            }
            BracketSpec::DualGroup { kappa, l } => bivector_dual(*kappa, &DualPair::from_free_coords(*l, x)?),
            BracketSpec::Sts { kappa, l } => bivector_sts(*kappa, &CMat::new(*l, *l, x.to_vec())?),
            BracketSpec::ZakC { kappa, n, f, g } => bivector_zak_complex(*kappa, f, g, &SpinPoint::from_coords(*n, x)?),
            BracketSpec::ZakR { epsilon, n, f, g } => bivector_zak_real(*epsilon, f, g, &x[..*n], &x[*n..]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_labels_match_dimensions() {
        let charts = [
            Chart::S { n: 2, d: 3 },
            Chart::SpinProduct { n: 3, d: 2 },
            Chart::Gl { l: 3 },
            Chart::Double { l: 2 },
            Chart::GlStar { l: 4 },
            Chart::C2n { n: 5 },
        ];
        for c in charts {
            assert_eq!(c.labels().len(), c.dim());
        }
        assert_eq!(Chart::S { n: 2, d: 1 }.labels(), ["A(1,1)", "A(2,1)", "B(1,1)", "B(1,2)"]);
        assert_eq!(Chart::GlStar { l: 2 }.labels(), ["h+(1,2)", "h+(1,1)", "h+(2,2)", "h-(2,1)"]);
    }

    #[test]
    fn holo_fn_validation() {
        assert!(HoloFn1::new("exp", |t: C64| t.exp(), |t: C64| t.exp()).is_ok());
        let bad = HoloFn1::new("sq", |t: C64| t * t, |t: C64| t);
        assert!(matches!(bad, Err(Error::DerivativeMismatch { .. })));
        let p = HoloFn1::polynomial(&[C64::new(2.0, 0.0), C64::new(1.0, 0.0)]);
        assert_eq!(p.eval(C64::new(0.5, 0.0)).unwrap(), C64::new(2.5, 0.0));
        assert_eq!(p.deriv(C64::new(0.5, 0.0)).unwrap(), C64::new(1.0, 0.0));
        let pole = HoloFn1 { name: "pole".into(), eval: Arc::new(|t: C64| 1.0 / t), deriv: Arc::new(|t: C64| -1.0 / (t * t)) };
        assert!(matches!(pole.eval(ZERO), Err(Error::Evaluation(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(BracketSpec::S { kappa: ZERO, n: 1, d: 1 }.validate().is_err());
        assert!(BracketSpec::GlMult { kappa: C64::new(1.0, 0.0), l: 0 }.validate().is_err());
        let f = HoloFn1::constant(C64::new(1.0, 0.0));
        assert!(BracketSpec::ZakR { epsilon: 0.0, n: 2, f: f.clone(), g: f }.validate().is_err());
        let s = BracketSpec::S { kappa: C64::new(1.0, 0.0), n: 2, d: 2 };
        assert!(matches!(s.evaluate(&[ZERO; 7]), Err(Error::DimensionMismatch(_))));
    }
}
