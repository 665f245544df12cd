use num_complex::Complex64 as C64;
use serde::Serialize;

use super::tensors::{as_tensor, r_minus, r_plus, tensor_defect};
use super::{bracket_of_functions, jacobian, Diff, DiffScheme};
use crate::brackets::{bivector_sts, BracketSpec};
use crate::decoupling::SPoint;
use crate::error::Result;
use crate::factorization::{g_plus_and_minus_inverse, gamma_pm, SpinPoint};
use crate::tensor_kit::CMat;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct MomentResiduals {
    /// `{Gamma1, Gamma2}` against the STS bracket at `Gamma = 1 + AB`.
    pub ga1: f64,
    /// `{A1, Gamma2}` and `{B1, Gamma2}`.
    pub ga2: f64,
    /// Moment conditions for `(g+, g-)` on the spin point of the first column and row.
    pub mom1_g: f64,
    /// Moment conditions for `(Gamma+, Gamma-)` on `S(n,d)`.
    pub mom1_gamma: f64,
    /// `{Gamma^1, Gamma^2}'` against `-kappa` STS at `Gamma^ = 1 - A^B^`.
    pub ga1_prime: f64,
    /// `{A^1, Gamma^2}'` and `{B^1, Gamma^2}'`.
    pub ga2_prime: f64,
}

/// `Gamma = 1 + sign A B` satisfies the STS relation and the moment
/// relations with constant `k` with respect to `spec`.
fn gamma_relations(spec: &BracketSpec, k: C64, sign: f64, p: &SPoint) -> Result<(f64, f64)> {
    let (n, d) = (p.n(), p.d());
    let x = p.to_coords();
    let gamma_of = |y: &[C64]| -> Result<Vec<C64>> {
        let q = SPoint::from_coords(n, d, y)?;
        Ok((&CMat::identity(n) + &(q.a() * q.b()).scale(C64::new(sign, 0.0))).into_vec())
    };
    let gamma = CMat::new(n, n, gamma_of(&x)?)?;
    let j = jacobian(&gamma_of, &x, Diff::Exact)?;
    let pi = spec.evaluate(&x)?.into_matrix();
    let gg = bracket_of_functions(&pi, &j, &j);
    let ga1 = gg.max_abs_diff(bivector_sts(k, &gamma)?.matrix())?;

    let xg = &pi * &j.transpose();
    let g2n = gamma.leg2(n);
    let (rp, rm) = (r_plus(n)?, r_minus(n)?);
    let middle = &(&g2n * &rp) - &(&rm * &g2n);
    let a_rhs = as_tensor(&(&middle * &p.a().leg1(n)).scale(k), (n, d, n, n))?;
    let b_rhs = as_tensor(&(&p.b().leg1(n) * &(&(&rm * &g2n) - &(&g2n * &rp))).scale(k), (d, n, n, n))?;
    let nd = n * d;
    let ga2 = tensor_defect(&xg, |i, al| i * d + al, &a_rhs).max(tensor_defect(&xg, |al, i| nd + al * n + i, &b_rhs));
    Ok((ga1, ga2))
}

/// `{A1, phi_+-2} = -kappa r_-+ A1 phi_+-2` and `{B1, phi_+-2} = kappa B1 r_-+ phi_+-2`.
fn mom1(
    kappa: C64,
    p: &SPoint,
    phi: &(dyn Fn(&SPoint) -> Result<(CMat, CMat)> + Sync),
    scheme: DiffScheme,
) -> Result<f64> {
    let (n, d) = (p.n(), p.d());
    let x = p.to_coords();
    let flat = |y: &[C64]| -> Result<Vec<C64>> {
        let (plus, minus) = phi(&SPoint::from_coords(n, d, y)?)?;
        Ok(plus.as_slice().iter().chain(minus.as_slice()).copied().collect())
    };
    let j = jacobian(&flat, &x, Diff::Scheme(scheme))?;
    let pi = spec_s(kappa, n, d).evaluate(&x)?.into_matrix();
    let xphi = &pi * &j.transpose();
    let nn = n * n;
    let (plus, minus) = phi(p)?;
    let nd = n * d;
    let mut worst: f64 = 0.0;
    for (offset, value, r_other) in [(0, &plus, r_minus(n)?), (nn, &minus, r_plus(n)?)] {
        let block = CMat::from_fn(xphi.rows(), nn, |row, c| xphi[(row, offset + c)]);
        let a_rhs = as_tensor(&(&(&r_other * &p.a().leg1(n)) * &value.leg2(d)).scale(-kappa), (n, d, n, n))?;
        let b_rhs = as_tensor(&(&(&p.b().leg1(n) * &r_other) * &value.leg2(n)).scale(kappa), (d, n, n, n))?;
        worst = worst
            .max(tensor_defect(&block, |i, al| i * d + al, &a_rhs))
            .max(tensor_defect(&block, |al, i| nd + al * n + i, &b_rhs));
    }
    Ok(worst)
}

fn spec_s(kappa: C64, n: usize, d: usize) -> BracketSpec {
    BracketSpec::S { kappa, n, d }
}

/// Moment-map relations at `p`: the polynomial ones by exact differentiation,
/// those involving square roots by finite differences.
pub fn moment_residuals(kappa: C64, p: &SPoint, scheme: DiffScheme) -> Result<MomentResiduals> {
    let (n, d) = (p.n(), p.d());
    let (ga1, ga2) = gamma_relations(&spec_s(kappa, n, d), kappa, 1.0, p)?;
    let (ga1_prime, ga2_prime) = gamma_relations(&BracketSpec::Prime { kappa, n, d }, -kappa, -1.0, p)?;
    let spin = SPoint::new(CMat::column(&p.a().col_vec(0)), CMat::row(&p.b().row_vec(0)))?;
    let g_pair = |q: &SPoint| -> Result<(CMat, CMat)> {
        let (gp, gmi) = g_plus_and_minus_inverse(&SpinPoint::new(q.a().col_vec(0), q.b().row_vec(0))?)?;
        Ok((gp, gmi.lower_triangular_inverse()?))
    };
    let mom1_g = mom1(kappa, &spin, &g_pair, scheme)?;
    let gamma_pair = |q: &SPoint| -> Result<(CMat, CMat)> {
        let pair = gamma_pm(q)?;
        Ok((pair.hplus().clone(), pair.hminus().clone()))
    };
    let mom1_gamma = mom1(kappa, p, &gamma_pair, scheme)?;
    Ok(MomentResiduals { ga1, ga2, mom1_g, mom1_gamma, ga1_prime, ga2_prime })
}
