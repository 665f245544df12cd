use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::decoupling::{iota, map_f, map_f_inverse, map_m, map_m_inverse, map_theta, CopyFactors, SpinTuple};
use crate::error::Result;
use crate::factorization::{calg_pm, chi, gamma, gamma_pm, g_plus_and_minus_inverse};
use crate::tensor_kit::CMat;

/// Defects of the algebraic identities satisfied by the decoupling maps,
/// each relative to `max(1, |target|_max)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct IdentityResiduals {
    /// `1 + a b = g+ g-^{-1}` on every copy.
    pub factid1: f64,
    /// `1 + A B = calG+ calG-^{-1}` with `(A, B) = m(a, b)`.
    pub factid2: f64,
    /// `1 - g+(alpha+1)..g+(d) A^ B^ g-(d)^{-1}..g-(alpha+1)^{-1} = g+(alpha)^{-1} g-(alpha)`.
    pub hat_other: f64,
    /// `1 - A^ B^ = calG+^{-1} calG-` with `(A^, B^) = F(a, b)`.
    pub hat_gamma: f64,
    /// `1 + kappa calA calB = calG+^{-1} calG-` with `(calA, calB) = theta(F(a, b))`.
    pub ao_res: f64,
    /// `g+ o iota = (g-^{-1})^T` and `g-^{-1} o iota = g+^T`.
    pub iota_g: f64,
    /// `h+^{alpha;gamma} o iota = (h-^{alpha;gamma})^T` and vice versa.
    pub iota_h: f64,
    /// `chi(Gamma+-) = Gamma` at `m(a, b)`.
    pub gamma_chi: f64,
    pub round_trip_m: f64,
    pub round_trip_f: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        [
            self.factid1,
            self.factid2,
            self.hat_other,
            self.hat_gamma,
            self.ao_res,
            self.iota_g,
            self.iota_h,
            self.gamma_chi,
            self.round_trip_m,
            self.round_trip_f,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn rel(lhs: &CMat, target: &CMat) -> Result<f64> {
    Ok(lhs.max_abs_diff(target)? / target.max_abs().max(1.0))
}

pub fn identity_residuals(kappa: C64, (theta_a, theta_b): (C64, C64), t: &SpinTuple) -> Result<IdentityResiduals> {
    let (n, d) = (t.n(), t.d());
    let id = CMat::identity(n);
    let f = CopyFactors::new(t)?;
    let mut out = IdentityResiduals::default();

    for (alpha, c) in t.copies().iter().enumerate() {
        let target = &id + &(&c.a_col() * &c.b_row());
        out.factid1 = out.factid1.max(rel(&(&f.g_plus[alpha] * &f.g_minus_inv[alpha]), &target)?);
    }

    let p = map_m(t)?;
    let cal = calg_pm(t)?;
    let big_gamma = gamma(&p);
    out.factid2 = rel(&(cal.hplus() * &cal.hminus_inverse()?), &big_gamma)?;
    out.gamma_chi = rel(&chi(&gamma_pm(&p)?)?, &big_gamma)?;

    let hat = map_f(t)?;
    let cal_plus_inv_minus = &cal.hplus().upper_triangular_inverse()? * cal.hminus();
    for alpha in 1..=d {
        let col = CMat::column(&hat.a().col_vec(alpha - 1));
        let row = CMat::row(&hat.b().row_vec(alpha - 1));
        let conj = &(&(&f.h_plus(alpha + 1, d) * &col) * &row) * &f.h_minus(alpha + 1, d);
        let lhs = &id - &conj;
        let rhs = &f.g_plus[alpha - 1].upper_triangular_inverse()? * &f.g_minus_inv[alpha - 1].lower_triangular_inverse()?;
        out.hat_other = out.hat_other.max(rel(&lhs, &rhs)?);
    }
    out.hat_gamma = rel(&(&id - &(hat.a() * hat.b())), &cal_plus_inv_minus)?;
    let ao = map_theta(&hat, theta_a, theta_b, kappa)?;
    out.ao_res = rel(&(&id + &(ao.a() * ao.b()).scale(kappa)), &cal_plus_inv_minus)?;

    let flipped = CopyFactors::new(&iota(t))?;
    for alpha in 0..d {
        let (gp, gmi) = g_plus_and_minus_inverse(&iota(t).copies()[alpha])?;
        out.iota_g = out
            .iota_g
            .max(rel(&gp, &f.g_minus_inv[alpha].transpose())?)
            .max(rel(&gmi, &f.g_plus[alpha].transpose())?);
    }
    for alpha in 1..=d {
        for gamma_ in alpha..=d {
            out.iota_h = out
                .iota_h
                .max(rel(&flipped.h_plus(alpha, gamma_), &f.h_minus(alpha, gamma_).transpose())?)
                .max(rel(&flipped.h_minus(alpha, gamma_), &f.h_plus(alpha, gamma_).transpose())?);
        }
    }

    let (ta, tb) = t.to_matrices();
    let scale = ta.max_abs().max(tb.max_abs()).max(1.0);
    out.round_trip_m = map_m_inverse(&p)?.max_abs_diff(t)? / scale;
    out.round_trip_f = map_f_inverse(&hat)?.max_abs_diff(t)? / scale;
    Ok(out)
}
