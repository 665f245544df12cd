use num_complex::Complex64 as C64;

use crate::brackets::bivector_s;
use crate::decoupling::SPoint;
use crate::error::{Error, Result};
use crate::factorization::{g_functions, SpinPoint, ZERO_G_TOLERANCE};
use crate::tensor_kit::{CMat, ONE};

/// The symplectic form of the `S(n,1)` bracket, `Omega[(p,q)]` being the
/// coefficient of `dx_p ^ dx_q` in the chart `(a_1..a_n, b_1..b_n)`:
/// `-1/kappa sum_i da_i ^ db_i / G_i
///  + 1/(2 kappa) sum_i sum_{s>i} (b_i da_i - a_i db_i) ^ (b_s da_s + a_s db_s) / (G_i G_{i+1})`.
pub fn symplectic_matrix(kappa: C64, p: &SpinPoint) -> Result<CMat> {
    let n = p.n();
    let g = g_functions(p);
    for (i, gi) in g.iter().enumerate().take(n + 1).skip(1) {
        if gi.norm() <= ZERO_G_TOLERANCE {
            return Err(Error::ZeroG(i));
        }
    }
    let (a, b) = (p.a(), p.b());
    let mut omega = CMat::zeros(2 * n, 2 * n);
    let mut wedge = |c: C64, u: &[(usize, C64)], v: &[(usize, C64)]| {
        for &(p, up) in u {
            for &(q, vq) in v {
                omega[(p, q)] += c * up * vq;
                omega[(q, p)] -= c * up * vq;
            }
        }
    };
    for i in 0..n {
        wedge(-ONE / (kappa * g[i + 1]), &[(i, ONE)], &[(n + i, ONE)]);
        let c = ONE / (2.0 * kappa * g[i + 1] * g[i + 2]);
        let u = [(i, b[i]), (n + i, -a[i])];
        for s in i + 1..n {
            wedge(c, &u, &[(s, b[s]), (n + s, a[s])]);
        }
    }
    Ok(omega)
}

/// `|Omega Pi - 1|_max` with `Pi` the `S(n,1)` bracket in the same chart.
pub fn symplectic_inversion_residual(kappa: C64, p: &SpinPoint) -> Result<f64> {
    let omega = symplectic_matrix(kappa, p)?;
    let pi = bivector_s(kappa, &SPoint::new(p.a_col(), p.b_row())?)?;
    (&omega * pi.matrix()).max_abs_diff(&CMat::identity(2 * p.n()))
}
