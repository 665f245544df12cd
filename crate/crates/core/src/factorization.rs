//! Gauss decomposition `g = g_> g_0 g_<`, the map `chi(h+, h-) = h+ h-^{-1}`
//! with its principal-branch local inverse, the closed-form factors `g_+-` of
//! `1 + a b`, and the moment map `Gamma = 1 + A B`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::decoupling::{SPoint, SpinTuple};
use crate::error::{Error, Result};
use crate::tensor_kit::{CMat, ONE, ZERO};

/// Relative threshold below which a pivot of the Gauss decomposition is
/// treated as zero.
pub const MINOR_TOLERANCE: f64 = 1e-12;

/// Allowed deviation of `(h+)_jj (h-)_jj` from 1.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-12;

/// A point `(a, b)` of `S(n,1)`: a column `a` and a row `b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinPoint {
    a: Vec<C64>,
    b: Vec<C64>,
}

impl SpinPoint {
    pub fn new(a: Vec<C64>, b: Vec<C64>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "spin point with |a| = {}, |b| = {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter("non-finite spin point entry".into()));
        }
        Ok(Self { a, b })
    }

    pub fn zeros(n: usize) -> Self {
        Self { a: vec![ZERO; n], b: vec![ZERO; n] }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[C64] {
        &self.a
    }

    pub fn b(&self) -> &[C64] {
        &self.b
    }

    pub fn a_col(&self) -> CMat {
        CMat::column(&self.a)
    }

    pub fn b_row(&self) -> CMat {
        CMat::row(&self.b)
    }

    /// `t = sum_r a_r b_r`.
    pub fn pairing(&self) -> C64 {
        self.a.iter().zip(&self.b).map(|(x, y)| x * y).sum()
    }

    /// `|a| * |b|` in the Euclidean norm; bounds `|G_j - 1|` by Cauchy-Schwarz.
    pub fn norm_product(&self) -> f64 {
        let na = self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let nb = self.b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        na * nb
    }

    /// Coordinates in chart order `(a_1..a_n, b_1..b_n)`.
    pub fn to_coords(&self) -> Vec<C64> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    pub fn from_coords(n: usize, x: &[C64]) -> Result<Self> {
        if x.len() != 2 * n {
            return Err(Error::DimensionMismatch(format!("{} coordinates for S({n},1)", x.len())));
        }
        Self::new(x[..n].to_vec(), x[n..].to_vec())
    }
}

/// An element `(h+, h-)` of the dual group: `h+` upper and `h-` lower
/// triangular with reciprocal diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPair {
    hplus: CMat,
    hminus: CMat,
}

impl DualPair {
    pub fn new(hplus: CMat, hminus: CMat) -> Result<Self> {
        if !hplus.is_square() || hplus.shape() != hminus.shape() {
            return Err(Error::DimensionMismatch(format!(
                "dual pair with shapes {:?}, {:?}",
                hplus.shape(),
                hminus.shape()
            )));
        }
        if !hplus.is_upper_triangular() {
            return Err(Error::InvalidParameter("h+ is not upper triangular".into()));
        }
        if !hminus.is_lower_triangular() {
            return Err(Error::InvalidParameter("h- is not lower triangular".into()));
        }
        for j in 0..hplus.rows() {
            let p = hplus[(j, j)] * hminus[(j, j)];
            if (p - ONE).norm() > RECIPROCITY_TOLERANCE {
                return Err(Error::InvalidParameter(format!(
                    "diagonal entries at {} are not reciprocal (product {p})",
                    j + 1
                )));
            }
        }
        Ok(Self { hplus, hminus })
    }

    pub fn identity(l: usize) -> Self {
        Self { hplus: CMat::identity(l), hminus: CMat::identity(l) }
    }

    pub fn size(&self) -> usize {
        self.hplus.rows()
    }

    pub fn hplus(&self) -> &CMat {
        &self.hplus
    }

    pub fn hminus(&self) -> &CMat {
        &self.hminus
    }

    pub fn hminus_inverse(&self) -> Result<CMat> {
        self.hminus.lower_triangular_inverse()
    }

    /// Group product in the double: `(h+ k+, h- k-)`.
    pub fn mul(&self, other: &DualPair) -> Result<DualPair> {
        Ok(DualPair { hplus: self.hplus.matmul(&other.hplus)?, hminus: self.hminus.matmul(&other.hminus)? })
    }

    /// Group inverse `(h+^{-1}, h-^{-1})`.
    pub fn inverse(&self) -> Result<DualPair> {
        Ok(DualPair {
            hplus: self.hplus.upper_triangular_inverse()?,
            hminus: self.hminus.lower_triangular_inverse()?,
        })
    }

    /// Free coordinates: strictly upper entries of `h+` (row-major), the
    /// diagonal of `h+`, then strictly lower entries of `h-` (row-major).
    pub fn to_free_coords(&self) -> Vec<C64> {
        let l = self.size();
        let mut x = Vec::with_capacity(l * l);
        for i in 0..l {
            for j in i + 1..l {
                x.push(self.hplus[(i, j)]);
            }
        }
        for i in 0..l {
            x.push(self.hplus[(i, i)]);
        }
        for i in 0..l {
            for j in 0..i {
                x.push(self.hminus[(i, j)]);
            }
        }
        x
    }

    /// Inverse of [`DualPair::to_free_coords`]; the diagonal of `h-` is set to
    /// `1 / (h+)_jj`.
    pub fn from_free_coords(l: usize, x: &[C64]) -> Result<Self> {
        if x.len() != l * l {
            return Err(Error::DimensionMismatch(format!("{} coordinates for GL({l})*", x.len())));
        }
        let mut it = x.iter().copied();
        let mut hplus = CMat::zeros(l, l);
        let mut hminus = CMat::zeros(l, l);
        for i in 0..l {
            for j in i + 1..l {
                hplus[(i, j)] = it.next().unwrap();
            }
        }
        for i in 0..l {
            let z = it.next().unwrap();
            if z.norm() == 0.0 {
                return Err(Error::NonInvertibleDiagonal(i + 1));
            }
            hplus[(i, i)] = z;
            hminus[(i, i)] = ONE / z;
        }
        for i in 0..l {
            for j in 0..i {
                hminus[(i, j)] = it.next().unwrap();
            }
        }
        if !hplus.is_finite() || !hminus.is_finite() {
            return Err(Error::InvalidParameter("non-finite dual group coordinates".into()));
        }
        Ok(Self { hplus, hminus })
    }
}

/// `g = upper * diag(d) * lower` with unit triangular outer factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Gauss {
    pub upper: CMat,
    pub diag: Vec<C64>,
    pub lower: CMat,
}

impl Gauss {
    pub fn reassemble(&self) -> CMat {
        &(&self.upper * &CMat::diag(&self.diag)) * &self.lower
    }
}

/// Gauss decomposition `g = g_> g_0 g_<` (unit upper, diagonal, unit lower).
///
/// The pivots are ratios of consecutive *trailing* principal minors, so
/// `SingularMinor(k)` names the size of the first vanishing bottom-right
/// minor.
pub fn gauss(g: &CMat) -> Result<Gauss> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch("Gauss decomposition of a non-square matrix".into()));
    }
    let l = g.rows();
    let threshold = MINOR_TOLERANCE * g.max_abs().max(f64::MIN_POSITIVE);
    let mut upper = CMat::identity(l);
    let mut lower = CMat::identity(l);
    let mut diag = vec![ZERO; l];
    for k in (0..l).rev() {
        let tail = |i: usize, j: usize, upper: &CMat, lower: &CMat, diag: &[C64]| -> C64 {
            (k + 1..l).map(|m| upper[(i, m)] * diag[m] * lower[(m, j)]).sum()
        };
        let pivot = g[(k, k)] - tail(k, k, &upper, &lower, &diag);
        if pivot.norm() <= threshold {
            return Err(Error::SingularMinor(l - k));
        }
        diag[k] = pivot;
        for i in 0..k {
            upper[(i, k)] = (g[(i, k)] - tail(i, k, &upper, &lower, &diag)) / pivot;
        }
        for j in 0..k {
            lower[(k, j)] = (g[(k, j)] - tail(k, j, &upper, &lower, &diag)) / pivot;
        }
    }
    Ok(Gauss { upper, diag, lower })
}

/// `chi(h+, h-) = h+ h-^{-1}`.
pub fn chi(pair: &DualPair) -> Result<CMat> {
    pair.hplus().matmul(&pair.hminus_inverse()?)
}

fn principal_sqrt(z: C64, position: usize) -> Result<C64> {
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::BranchCut(position));
    }
    Ok(z.sqrt())
}

/// Local inverse of [`chi`] on the branch through `(1, 1)`: Gauss decompose
/// `h` and split the diagonal factor with principal square roots.
pub fn chi_inverse_local(h: &CMat) -> Result<DualPair> {
    let Gauss { upper, diag, lower } = gauss(h)?;
    let l = diag.len();
    let roots = diag
        .iter()
        .enumerate()
        .map(|(j, &z)| principal_sqrt(z, j + 1))
        .collect::<Result<Vec<_>>>()?;
    let mut hplus = upper;
    let mut hminus_inv = lower;
    for i in 0..l {
        for j in 0..l {
            hplus[(i, j)] *= roots[j];
            hminus_inv[(i, j)] *= roots[i];
        }
    }
    let hminus = hminus_inv.lower_triangular_inverse()?;
    DualPair::new(hplus, hminus)
}

/// `G_j = 1 + sum_{k >= j} a_k b_k`, returned as `[G_0, G_1, .., G_n, G_{n+1}]`
/// with `G_0 = G_{n+1} = 1`.
pub fn g_functions(p: &SpinPoint) -> Vec<C64> {
    let n = p.n();
    let mut g = vec![ONE; n + 2];
    let mut acc = ONE;
    for j in (1..=n).rev() {
        acc += p.a()[j - 1] * p.b()[j - 1];
        g[j] = acc;
    }
    g
}

/// Below this modulus `G_j` is reported as vanishing.
pub const ZERO_G_TOLERANCE: f64 = 1e-14;

/// Principal square roots `s_1..s_n` of `G_1..G_n`, with `s_{n+1} = 1` appended.
fn g_roots(p: &SpinPoint) -> Result<Vec<C64>> {
    let g = g_functions(p);
    let n = p.n();
    let mut s = Vec::with_capacity(n + 1);
    for j in 1..=n {
        if g[j].norm() <= ZERO_G_TOLERANCE {
            return Err(Error::ZeroG(j));
        }
        s.push(principal_sqrt(g[j], j)?);
    }
    s.push(ONE);
    Ok(s)
}

/// The upper factor `g_+` and the lower factor `g_-^{-1}` in closed form.
pub fn g_plus_and_minus_inverse(p: &SpinPoint) -> Result<(CMat, CMat)> {
    let n = p.n();
    let s = g_roots(p)?;
    let (a, b) = (p.a(), p.b());
    let mut gp = CMat::zeros(n, n);
    let mut gmi = CMat::zeros(n, n);
    for j in 0..n {
        let diag = s[j] / s[j + 1];
        gp[(j, j)] = diag;
        gmi[(j, j)] = diag;
        for k in j + 1..n {
            gp[(j, k)] = a[j] * b[k] / (s[k] * s[k + 1]);
        }
        for k in 0..j {
            gmi[(j, k)] = a[j] * b[k] / (s[j] * s[j + 1]);
        }
    }
    Ok((gp, gmi))
}

/// The dual-group valued map `(g_+, g_-)` on `S(n,1)`, with square roots
/// `s_j = sqrt(G_j)` taken once per index so that `1 + a b = g_+ g_-^{-1}`
/// holds identically.
pub fn g_pm(p: &SpinPoint) -> Result<DualPair> {
    let (gp, gmi) = g_plus_and_minus_inverse(p)?;
    let gm = gmi.lower_triangular_inverse()?;
    DualPair::new(gp, gm)
}

/// `Gamma(A, B) = 1_n + A B`.
pub fn gamma(point: &SPoint) -> CMat {
    let n = point.n();
    &CMat::identity(n) + &(point.a() * point.b())
}

/// `(Gamma_+, Gamma_-)`: the principal-branch factorization of `Gamma`.
pub fn gamma_pm(point: &SPoint) -> Result<DualPair> {
    chi_inverse_local(&gamma(point))
}

/// `(G_+, G_-) = (g_+(1) .. g_+(d), g_-(1) .. g_-(d))`.
pub fn calg_pm(points: &SpinTuple) -> Result<DualPair> {
    let n = points.n();
    let mut acc = DualPair::identity(n);
    for (alpha, p) in points.copies().iter().enumerate() {
        let f = g_pm(p).map_err(Error::in_copy(alpha + 1))?;
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}
