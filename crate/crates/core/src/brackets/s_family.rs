use num_complex::Complex64 as C64;

use super::{Bivector, Chart};
use crate::decoupling::{SPoint, SpinTuple};
use crate::error::Result;
use crate::tensor_kit::{r_weight, CMat, ONE, ZERO};

/// The three oscillator-type brackets on `S(n,d)` sharing the shape of the
/// `S` bracket with different coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AoKind {
    Plus,
    /// `AoKind::Plus` in the variables `(A eta, eta B)`.
    Minus,
    Prime,
}

/// Coefficients of
/// `{A1,A2} = c.aa_left r A1A2 + c.aa_right A1A2 r`,
/// `{B1,B2} = c.bb_right B1B2 r + c.bb_left r B1B2`,
/// `{A1,B2} = c.ab_left B2 r_+ A1 + c.ab_right A1 r_s B2 + c.constant C12`.
struct Coeffs {
    aa_left: C64,
    aa_right: C64,
    bb_right: C64,
    bb_left: C64,
    ab_left: C64,
    ab_right: C64,
    right_shift: f64,
    constant: C64,
}

fn s_coeffs(kappa: C64) -> Coeffs {
    Coeffs {
        aa_left: -kappa,
        aa_right: -kappa,
        bb_right: -kappa,
        bb_left: -kappa,
        ab_left: kappa,
        ab_right: kappa,
        right_shift: 1.0,
        constant: kappa,
    }
}

fn ao_coeffs(kappa: C64, constant: C64) -> Coeffs {
    Coeffs {
        aa_left: kappa,
        aa_right: -kappa,
        bb_right: kappa,
        bb_left: -kappa,
        ab_left: -kappa,
        ab_right: kappa,
        right_shift: -1.0,
        constant,
    }
}

fn quadratic_family(c: &Coeffs, p: &SPoint, chart: Chart) -> Bivector {
    let (n, d) = (p.n(), p.d());
    let (a, b) = (p.a(), p.b());
    let nd = n * d;
    // left[i][alpha][beta] = sum_s w_+(i,s) A_{s alpha} B_{beta s}
    let mut left = vec![ZERO; n * d * d];
    for i in 0..n {
        for al in 0..d {
            for be in 0..d {
                left[(i * d + al) * d + be] = (0..n).map(|s| r_weight(1.0, i, s) * a[(s, al)] * b[(be, s)]).sum();
            }
        }
    }
    // right[i][k][alpha] = sum_mu w_s(mu,alpha) A_{i mu} B_{mu k}
    let mut right = vec![ZERO; n * n * d];
    for i in 0..n {
        for k in 0..n {
            for al in 0..d {
                right[(i * n + k) * d + al] =
                    (0..d).map(|mu| r_weight(c.right_shift, mu, al) * a[(i, mu)] * b[(mu, k)]).sum();
            }
        }
    }
    Bivector::from_upper(chart, |p, q| {
        if q < nd {
            let (i, al, k, be) = (p / d, p % d, q / d, q % d);
            let prod = a[(k, al)] * a[(i, be)];
            c.aa_left * r_weight(0.0, i, k) * prod + c.aa_right * r_weight(0.0, be, al) * prod
        } else if p >= nd {
            let (al, i, be, k) = ((p - nd) / n, (p - nd) % n, (q - nd) / n, (q - nd) % n);
            let prod = b[(al, k)] * b[(be, i)];
            c.bb_right * r_weight(0.0, k, i) * prod + c.bb_left * r_weight(0.0, al, be) * prod
        } else {
            let (i, al, be, k) = (p / d, p % d, (q - nd) / n, (q - nd) % n);
            let mut z = ZERO;
            if i == k {
                z += c.ab_left * left[(i * d + al) * d + be];
            }
            if al == be {
                z += c.ab_right * right[(i * n + k) * d + al];
                if i == k {
                    z += c.constant;
                }
            }
            z
        }
    })
}

/// The bracket `{ , }_kappa` on `S(n,d)`, componentwise.
pub fn bivector_s(kappa: C64, p: &SPoint) -> Result<Bivector> {
    Ok(quadratic_family(&s_coeffs(kappa), p, Chart::S { n: p.n(), d: p.d() }))
}

/// Product of the `S(n,1)` brackets on `d` copies; distinct copies commute.
pub fn bivector_s1_product(kappa: C64, t: &SpinTuple) -> Result<Bivector> {
    let (n, d) = (t.n(), t.d());
    let blocks: Vec<Bivector> = t
        .copies()
        .iter()
        .map(|c| bivector_s(kappa, &SPoint::new(c.a_col(), c.b_row()).expect("spin copy shapes")))
        .collect::<Result<_>>()?;
    let nd = n * d;
    // chart position -> (copy, index within the S(n,1) chart of that copy)
    let locate = |p: usize| if p < nd { (p % d, p / d) } else { ((p - nd) / n, n + (p - nd) % n) };
    Ok(Bivector::from_upper(Chart::SpinProduct { n, d }, |p, q| {
        let ((cp, ip), (cq, iq)) = (locate(p), locate(q));
        if cp == cq { blocks[cp].get(ip, iq) } else { ZERO }
    }))
}

/// The oscillator brackets `{ , }^+_kappa`, `{ , }^-_kappa` and `{ , }'_kappa`.
pub fn bivector_ao(kind: AoKind, kappa: C64, p: &SPoint) -> Result<Bivector> {
    let chart = Chart::S { n: p.n(), d: p.d() };
    match kind {
        AoKind::Plus => Ok(quadratic_family(&ao_coeffs(kappa, -ONE), p, chart)),
        AoKind::Prime => Ok(quadratic_family(&ao_coeffs(kappa, kappa), p, chart)),
        AoKind::Minus => {
            let (n, d) = (p.n(), p.d());
            let flipped_a = CMat::from_fn(n, d, |i, al| p.a()[(i, d - 1 - al)]);
            let flipped_b = CMat::from_fn(d, n, |al, i| p.b()[(d - 1 - al, i)]);
            let plus = quadratic_family(&ao_coeffs(kappa, -ONE), &SPoint::new(flipped_a, flipped_b)?, chart);
            let nd = n * d;
            let sigma = |p: usize| if p < nd { (p / d) * d + (d - 1 - p % d) } else { nd + (d - 1 - (p - nd) / n) * n + (p - nd) % n };
            Ok(Bivector::from_upper(chart, |p, q| plus.get(sigma(p), sigma(q))))
        }
    }
}
