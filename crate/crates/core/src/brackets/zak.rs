use num_complex::Complex64 as C64;

use super::{Bivector, Chart, HoloFn1};
use crate::error::{Error, Result};
use crate::factorization::SpinPoint;
use crate::tensor_kit::{sgn, ZERO};

/// The holomorphic Zakrzewski bracket on `C^{2n}` with `t = sum_r a_r b_r`:
/// `{a_i,a_j} = kappa/2 sgn(i-j) a_i a_j`, `{b_i,b_j} = -kappa/2 sgn(i-j) b_i b_j`,
/// `{a_i,b_l} = kappa/2 (delta_il F - G a_i b_l + delta_il sum_r sgn(r-i) a_r b_r)`.
pub fn bivector_zak_complex(kappa: C64, f: &HoloFn1, g: &HoloFn1, p: &SpinPoint) -> Result<Bivector> {
    let n = p.n();
    let (a, b) = (p.a(), p.b());
    let t = p.pairing();
    let (fv, gv) = (f.eval(t)?, g.eval(t)?);
    let half = kappa * 0.5;
    let tail: Vec<C64> = (0..n).map(|i| (0..n).map(|r| sgn(r, i) * a[r] * b[r]).sum()).collect();
    Ok(Bivector::from_upper(Chart::C2n { n }, |p, q| match (p < n, q < n) {
        (true, true) => half * sgn(p, q) * a[p] * a[q],
        (false, false) => -half * sgn(p - n, q - n) * b[p - n] * b[q - n],
        _ => {
            let (i, l) = (p, q - n);
            let diag = if i == l { fv + tail[i] } else { ZERO };
            half * (diag - gv * a[i] * b[l])
        }
    }))
}

/// The complexified real Zakrzewski bracket on the coordinates `(u, ubar)`,
/// treated as independent, with `|u_r|^2 = u_r ubar_r`:
/// `{u_i,u_j} = -eps i sgn(i-j) u_i u_j`, `{ubar_i,ubar_j} = eps i sgn(i-j) ubar_i ubar_j`,
/// `{u_i,ubar_l} = -eps i delta_il F + eps i G u_i ubar_l - eps i delta_il sum_r sgn(r-i) |u_r|^2`.
pub fn bivector_zak_real(epsilon: f64, f: &HoloFn1, g: &HoloFn1, u: &[C64], ubar: &[C64]) -> Result<Bivector> {
    let n = u.len();
    if ubar.len() != n {
        return Err(Error::DimensionMismatch(format!("u has {n} entries, ubar has {}", ubar.len())));
    }
    let ei = C64::new(0.0, epsilon);
    let sq: Vec<C64> = u.iter().zip(ubar).map(|(x, y)| x * y).collect();
    let t: C64 = sq.iter().sum();
    let (fv, gv) = (f.eval(t)?, g.eval(t)?);
    Ok(Bivector::from_upper(Chart::C2n { n }, |p, q| match (p < n, q < n) {
        (true, true) => -ei * sgn(p, q) * u[p] * u[q],
        (false, false) => ei * sgn(p - n, q - n) * ubar[p - n] * ubar[q - n],
        _ => {
            let (i, l) = (p, q - n);
            let mut z = ei * gv * u[i] * ubar[l];
            if i == l {
                z -= ei * fv;
                z -= ei * (0..n).map(|r| sgn(r, i) * sq[r]).sum::<C64>();
            }
            z
        }
    }))
}
