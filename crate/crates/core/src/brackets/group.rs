use num_complex::Complex64 as C64;

use super::{Bivector, Chart};
use crate::error::{Error, Result};
use crate::factorization::DualPair;
use crate::tensor_kit::{r_weight, CMat, ZERO};

/// `{X_ij, Y_kl}` read off from `kappa [X1 Y2, r_s]`.
#[inline]
fn commutator(kappa: C64, x: &CMat, y: &CMat, shift: f64, (i, j): (usize, usize), (k, l): (usize, usize)) -> C64 {
    kappa * (r_weight(shift, l, j) * x[(i, l)] * y[(k, j)] - r_weight(shift, i, k) * x[(k, j)] * y[(i, l)])
}

fn square(m: &CMat, what: &str) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("{what} must be square, got {:?}", m.shape())));
    }
    Ok(m.rows())
}

/// The multiplicative bracket `{g1, g2} = kappa [g1 g2, r]`.
pub fn bivector_gl_mult(kappa: C64, g: &CMat) -> Result<Bivector> {
    let l = square(g, "g")?;
    Ok(Bivector::from_upper(Chart::Gl { l }, |p, q| commutator(kappa, g, g, 0.0, (p / l, p % l), (q / l, q % l))))
}

/// The bracket of the double `GL(l) x GL(l)`: multiplicative on each factor,
/// `{u1, v2} = kappa [u1 v2, r_+]` between them.
pub fn bivector_double(kappa: C64, u: &CMat, v: &CMat) -> Result<Bivector> {
    let l = square(u, "u")?;
    if v.shape() != (l, l) {
        return Err(Error::DimensionMismatch(format!("u is {l}x{l} but v is {:?}", v.shape())));
    }
    let ll = l * l;
    Ok(Bivector::from_upper(Chart::Double { l }, |p, q| {
        let at = |p: usize| ((p % ll) / l, p % l);
        match (p < ll, q < ll) {
            (true, true) => commutator(kappa, u, u, 0.0, at(p), at(q)),
            (false, false) => commutator(kappa, v, v, 0.0, at(p), at(q)),
            _ => commutator(kappa, u, v, 1.0, at(p), at(q)),
        }
    }))
}

/// Free coordinates of the dual group in chart order: `(true, i, j)` for an
/// entry of `h+`, `(false, i, j)` for an entry of `h-`.
pub(crate) fn dual_coordinates(l: usize) -> Vec<(bool, usize, usize)> {
    let mut out = Vec::with_capacity(l * l);
    for i in 0..l {
        for j in i + 1..l {
            out.push((true, i, j));
        }
    }
    out.extend((0..l).map(|i| (true, i, i)));
    for i in 0..l {
        for j in 0..i {
            out.push((false, i, j));
        }
    }
    out
}

/// Position of each dual-group free coordinate in the chart of the double.
pub(crate) fn dual_coordinate_positions(l: usize) -> Vec<usize> {
    dual_coordinates(l).into_iter().map(|(plus, i, j)| if plus { i * l + j } else { l * l + i * l + j }).collect()
}

/// The bracket on the dual group restricted to its free coordinates:
/// `{h_+-1, h_+-2} = kappa [h_+-1 h_+-2, r]`, `{h_+1, h_-2} = kappa [h_+1 h_-2, r_+]`.
///
/// The dependent diagonal `(h-)_jj = 1/(h+)_jj` enters only through its
/// values; its own brackets follow by the Leibniz rule,
/// `{x, (h-)_jj} = -(h-)_jj^2 {x, (h+)_jj}` (see [`dual_dependent_bracket`]).
pub fn bivector_dual(kappa: C64, pair: &DualPair) -> Result<Bivector> {
    let l = pair.size();
    for j in 0..l {
        if pair.hplus()[(j, j)].norm() == 0.0 {
            return Err(Error::NonInvertibleDiagonal(j + 1));
        }
    }
    let coords = dual_coordinates(l);
    let (hp, hm) = (pair.hplus(), pair.hminus());
    Ok(Bivector::from_upper(Chart::GlStar { l }, |p, q| {
        let ((sp, i, j), (sq, k, m)) = (coords[p], coords[q]);
        match (sp, sq) {
            (true, true) => commutator(kappa, hp, hp, 0.0, (i, j), (k, m)),
            (false, false) => commutator(kappa, hm, hm, 0.0, (i, j), (k, m)),
            (true, false) => commutator(kappa, hp, hm, 1.0, (i, j), (k, m)),
            (false, true) => -commutator(kappa, hp, hm, 1.0, (k, m), (i, j)),
        }
    }))
}

/// `{x_p, (h-)_jj}` for free coordinate `p` and 0-based `j`, via the Leibniz rule.
pub fn dual_dependent_bracket(bv: &Bivector, pair: &DualPair, p: usize, j: usize) -> C64 {
    let l = pair.size();
    let diag_index = l * (l - 1) / 2 + j;
    let hm = pair.hminus()[(j, j)];
    -hm * hm * bv.get(p, diag_index)
}

/// The Semenov-Tian-Shansky bracket
/// `{h1, h2} = kappa (h1 r_- h2 + h2 r_+ h1 - h1 h2 r - r h1 h2)`.
pub fn bivector_sts(kappa: C64, h: &CMat) -> Result<Bivector> {
    let l = square(h, "h")?;
    Ok(Bivector::from_upper(Chart::Gl { l }, |p, q| {
        let (i, j, k, m) = (p / l, p % l, q / l, q % l);
        let mut z = ZERO;
        if j == k {
            z += (0..l).map(|s| r_weight(-1.0, s, j) * h[(i, s)] * h[(s, m)]).sum::<C64>();
        }
        if i == m {
            z += (0..l).map(|s| r_weight(1.0, i, s) * h[(k, s)] * h[(s, j)]).sum::<C64>();
        }
        z -= r_weight(0.0, m, j) * h[(i, m)] * h[(k, j)];
        z -= r_weight(0.0, i, k) * h[(k, j)] * h[(i, m)];
        kappa * z
    }))
}
