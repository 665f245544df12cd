//! Residuals of the Poisson-geometric identities: Jacobi, Poisson and
//! anti-Poisson maps, Poisson actions, moment-map relations, the bracket
//! lemmas for the partial products `h_+-`, symplectic inversion and rank.

mod identities;
mod lemma4;
pub mod maps;
mod moments;
mod report;
mod symplectic;
mod tensors;

use num_complex::Complex64 as C64;

use crate::brackets::{bivector_double, BracketSpec};
use crate::error::{Error, Result};
use crate::tensor_kit::{CMat, ZERO};

pub use identities::{identity_residuals, IdentityResiduals};
pub use lemma4::{lemma4_residuals, Lemma4Residuals};
pub use moments::{moment_residuals, MomentResiduals};
pub use report::{Failure, Sample, VerificationReport};
pub use symplectic::{symplectic_inversion_residual, symplectic_matrix};

/// A map between coordinate charts.
pub type CoordMap<'a> = dyn Fn(&[C64]) -> Result<Vec<C64>> + Sync + 'a;

/// A group action `(g, x) -> g.x` between coordinate charts.
pub type ActionMap<'a> = dyn Fn(&[C64], &[C64]) -> Result<Vec<C64>> + Sync + 'a;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    RealAxis,
    ImagAxis,
}

/// Central differences of a holomorphic map along one axis of each complex
/// coordinate, optionally with one Richardson extrapolation.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DiffScheme {
    step: f64,
    richardson: bool,
    direction: Direction,
}

impl Default for DiffScheme {
    fn default() -> Self {
        Self { step: 1e-5, richardson: true, direction: Direction::RealAxis }
    }
}

impl DiffScheme {
    pub const MIN_STEP: f64 = 1e-9;
    pub const MAX_STEP: f64 = 1e-2;

    pub fn new(step: f64, richardson: bool, direction: Direction) -> Result<Self> {
        if !(Self::MIN_STEP..=Self::MAX_STEP).contains(&step) {
            return Err(Error::InvalidParameter(format!(
                "finite difference step {step} outside [{}, {}]",
                Self::MIN_STEP,
                Self::MAX_STEP
            )));
        }
        Ok(Self { step, richardson, direction })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn richardson(&self) -> bool {
        self.richardson
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
}

/// How to differentiate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Diff {
    /// Unit-step central difference: exact up to rounding for polynomials of
    /// degree at most 2, in particular for linear maps.
    Exact,
    Scheme(DiffScheme),
}

fn central(f: &CoordMap<'_>, x: &[C64], c: usize, h: C64) -> Result<Vec<C64>> {
    let mut y = x.to_vec();
    y[c] = x[c] + h;
    let plus = f(&y).map_err(|e| Error::DomainEscape(Box::new(e)))?;
    y[c] = x[c] - h;
    let minus = f(&y).map_err(|e| Error::DomainEscape(Box::new(e)))?;
    let scale = 1.0 / (2.0 * h);
    Ok(plus.iter().zip(&minus).map(|(p, m)| (p - m) * scale).collect())
}

/// Derivative of `f` along coordinate `c`.
pub fn partial(f: &CoordMap<'_>, x: &[C64], c: usize, diff: Diff) -> Result<Vec<C64>> {
    match diff {
        Diff::Exact => central(f, x, c, C64::new(1.0, 0.0)),
        Diff::Scheme(s) => {
            let h = match s.direction {
                Direction::RealAxis => C64::new(s.step, 0.0),
                Direction::ImagAxis => C64::new(0.0, s.step),
            };
            let coarse = central(f, x, c, h)?;
            if !s.richardson {
                return Ok(coarse);
            }
            let fine = central(f, x, c, h * 0.5)?;
            Ok(fine.iter().zip(&coarse).map(|(f, c)| (f * 4.0 - c) / 3.0).collect())
        }
    }
}

/// Jacobian `J[(out, in)] = d f_out / d x_in`.
pub fn jacobian(f: &CoordMap<'_>, x: &[C64], diff: Diff) -> Result<CMat> {
    let m = f(x)?.len();
    let mut j = CMat::zeros(m, x.len());
    for c in 0..x.len() {
        let col = partial(f, x, c, diff)?;
        if col.len() != m {
            return Err(Error::DimensionMismatch("map output length changed".into()));
        }
        j.set_col(c, &col);
    }
    Ok(j)
}

/// `J1 Pi J2^T`: the brackets `{f_a, g_b}` from the Jacobians of `f` and `g`.
pub fn bracket_of_functions(pi: &CMat, j1: &CMat, j2: &CMat) -> CMat {
    &(j1 * pi) * &j2.transpose()
}

/// `D[l]` = derivative of the bivector matrix along coordinate `l`.
fn bivector_derivatives(spec: &BracketSpec, x: &[C64], scheme: DiffScheme) -> Result<Vec<CMat>> {
    let dim = x.len();
    if let BracketSpec::DualGroup { kappa, l } = spec {
        return dual_group_derivatives(*kappa, *l, x);
    }
    let diff = if spec.is_quadratic() { Diff::Exact } else { Diff::Scheme(scheme) };
    let f = |y: &[C64]| spec.evaluate(y).map(|b| b.into_matrix().into_vec());
    (0..dim)
        .map(|c| partial(&f, x, c, diff).and_then(|v| CMat::new(dim, dim, v)))
        .collect()
}

/// The dual-group bracket is the double bracket restricted to the free
/// coordinates, with `(h-)_jj = 1/(h+)_jj`. The double bracket is quadratic,
/// so its derivatives are exact and the chain rule through the dependent
/// diagonal gives exact derivatives here too.
fn dual_group_derivatives(kappa: C64, l: usize, x: &[C64]) -> Result<Vec<CMat>> {
    let pair = crate::factorization::DualPair::from_free_coords(l, x)?;
    let ll = l * l;
    let coords = crate::brackets::dual_coordinate_positions(l);
    let y: Vec<C64> = pair.hplus().as_slice().iter().chain(pair.hminus().as_slice()).copied().collect();
    let double = |y: &[C64]| -> Result<Vec<C64>> {
        let u = CMat::new(l, l, y[..ll].to_vec())?;
        let v = CMat::new(l, l, y[ll..].to_vec())?;
        Ok(bivector_double(kappa, &u, &v)?.into_matrix().into_vec())
    };
    let restrict = |full: &[C64]| -> CMat {
        CMat::from_fn(x.len(), x.len(), |p, q| full[coords[p] * 2 * ll + coords[q]])
    };
    let mut out = Vec::with_capacity(x.len());
    for (c, &pos) in coords.iter().enumerate() {
        let mut d = restrict(&partial(&double, &y, pos, Diff::Exact)?);
        let diag_start = l * (l - 1) / 2;
        if (diag_start..diag_start + l).contains(&c) {
            let j = c - diag_start;
            let hm = pair.hminus()[(j, j)];
            let dep = restrict(&partial(&double, &y, ll + j * l + j, Diff::Exact)?);
            d = &d + &dep.scale(-hm * hm);
        }
        out.push(d);
    }
    Ok(out)
}

/// Largest `|sum_cyclic sum_l Pi^{il} d_l Pi^{jk}|` over triples `i < j < k`.
pub fn jacobi_residual(spec: &BracketSpec, x: &[C64], scheme: DiffScheme) -> Result<f64> {
    let pi = spec.evaluate(x)?.into_matrix();
    let n = x.len();
    let ders = bivector_derivatives(spec, x, scheme)?;
    // m[i][j][k] = sum_l pi[i][l] d_l pi[j][k]
    let stacked = CMat::from_fn(n, n * n, |l, jk| ders[l][(jk / n, jk % n)]);
    let m = &pi * &stacked;
    let at = |i: usize, j: usize, k: usize| m[(i, j * n + k)];
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                worst = worst.max((at(i, j, k) + at(j, k, i) + at(k, i, j)).norm());
            }
        }
    }
    Ok(worst)
}

/// `|J Pi_src(x) J^T - Pi_tgt(map(x))|_max`.
pub fn poisson_map_residual(
    src: &BracketSpec,
    tgt: &BracketSpec,
    map: &CoordMap<'_>,
    x: &[C64],
    diff: Diff,
) -> Result<f64> {
    let j = jacobian(map, x, diff)?;
    let pushed = bracket_of_functions(&src.evaluate(x)?.into_matrix(), &j, &j);
    pushed.max_abs_diff(tgt.evaluate(&map(x)?)?.matrix())
}

/// `|J Pi(x) J^T + Pi(map(x))|_max`.
pub fn anti_poisson_residual(spec: &BracketSpec, map: &CoordMap<'_>, x: &[C64], diff: Diff) -> Result<f64> {
    let j = jacobian(map, x, diff)?;
    let pushed = bracket_of_functions(&spec.evaluate(x)?.into_matrix(), &j, &j);
    Ok((&pushed + spec.evaluate(&map(x)?)?.matrix()).max_abs())
}

/// Residual of the Poisson property of an action `(g, x) -> g.x`:
/// `|J_g Pi_G(g) J_g^T + J_x Pi(x) J_x^T - Pi(g.x)|_max`.
pub fn action_residual(
    group: &BracketSpec,
    space: &BracketSpec,
    action: &ActionMap<'_>,
    g: &[C64],
    x: &[C64],
    diff: Diff,
) -> Result<f64> {
    let jg = jacobian(&|h: &[C64]| action(h, x), g, diff)?;
    let jx = jacobian(&|y: &[C64]| action(g, y), x, diff)?;
    let lhs = &bracket_of_functions(&group.evaluate(g)?.into_matrix(), &jg, &jg)
        + &bracket_of_functions(&space.evaluate(x)?.into_matrix(), &jx, &jx);
    lhs.max_abs_diff(space.evaluate(&action(g, x)?)?.matrix())
}

/// `{x_p, f} = sum_c Pi^{pc} d_c f`.
pub fn bracket_coord_fn(
    spec: &BracketSpec,
    x: &[C64],
    p: usize,
    f: &(dyn Fn(&[C64]) -> Result<C64> + Sync),
    diff: Diff,
) -> Result<C64> {
    let pi = spec.evaluate(x)?;
    let wrapped = |y: &[C64]| f(y).map(|z| vec![z]);
    let mut total = ZERO;
    for c in 0..x.len() {
        let entry = pi.get(p, c);
        if entry != ZERO {
            total += entry * partial(&wrapped, x, c, diff)?[0];
        }
    }
    Ok(total)
}

/// Number of singular values above `sv_tolerance * max(sigma_max, 1)`.
pub fn rank_at(spec: &BracketSpec, x: &[C64], sv_tolerance: f64) -> Result<usize> {
    let m = spec.evaluate(x)?.into_matrix().to_nalgebra();
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max).max(1.0);
    Ok(sv.iter().filter(|&&s| s > sv_tolerance * top).count())
}

/// `|F F' + G (F - F' t) - t|`.
pub fn zak_condition_residual(f: &crate::brackets::HoloFn1, g: &crate::brackets::HoloFn1, t: C64) -> Result<f64> {
    let (fv, fd, gv) = (f.eval(t)?, f.deriv(t)?, g.eval(t)?);
    Ok((fv * fd + gv * (fv - fd * t) - t).norm())
}

#[cfg(test)]
mod tests;
