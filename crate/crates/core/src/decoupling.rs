//! The decoupling diffeomorphisms `m` and `F` from `d` copies of `S(n,1)` into
//! `S(n,d)`, their local inverses, and the auxiliary maps `nu`, `xi`, `theta`
//! and the involution `iota`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::factorization::{chi_inverse_local, g_plus_and_minus_inverse, SpinPoint};
use crate::tensor_kit::{eta, CMat, ONE};

/// Every spin copy fed to a local map must satisfy `|a| |b| < DOMAIN_GUARD`,
/// which keeps all `G_j` inside `Re G_j > 1 - DOMAIN_GUARD`.
pub const DOMAIN_GUARD: f64 = 0.9;

/// Relative tolerance on the scalar constraints `xi_A xi_B = -1/kappa` and
/// `theta_A theta_B = -1/kappa`.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

/// A point `(A, B)` of `S(n,d) = Mat(n x d) x Mat(d x n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SPoint {
    a: CMat,
    b: CMat,
}

impl SPoint {
    pub fn new(a: CMat, b: CMat) -> Result<Self> {
        if a.rows() != b.cols() || a.cols() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "A is {:?} but B is {:?}",
                a.shape(),
                b.shape()
            )));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter("non-finite S(n,d) point".into()));
        }
        Ok(Self { a, b })
    }

    pub fn zeros(n: usize, d: usize) -> Self {
        Self { a: CMat::zeros(n, d), b: CMat::zeros(d, n) }
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn d(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &CMat {
        &self.a
    }

    pub fn b(&self) -> &CMat {
        &self.b
    }

    /// Chart order: `A` row-major, then `B` row-major.
    pub fn to_coords(&self) -> Vec<C64> {
        self.a.as_slice().iter().chain(self.b.as_slice()).copied().collect()
    }

    pub fn from_coords(n: usize, d: usize, x: &[C64]) -> Result<Self> {
        if x.len() != 2 * n * d {
            return Err(Error::DimensionMismatch(format!("{} coordinates for S({n},{d})", x.len())));
        }
        Self::new(CMat::new(n, d, x[..n * d].to_vec())?, CMat::new(d, n, x[n * d..].to_vec())?)
    }

    pub fn max_abs_diff(&self, other: &SPoint) -> Result<f64> {
        Ok(self.a.max_abs_diff(&other.a)?.max(self.b.max_abs_diff(&other.b)?))
    }
}

/// `d` spin points `(a^alpha, b^alpha)` of common size `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTuple {
    copies: Vec<SpinPoint>,
}

impl SpinTuple {
    pub fn new(copies: Vec<SpinPoint>) -> Result<Self> {
        let n = copies.first().map(SpinPoint::n).ok_or_else(|| Error::InvalidParameter("empty spin tuple".into()))?;
        if copies.iter().any(|c| c.n() != n) {
            return Err(Error::DimensionMismatch("spin copies of different sizes".into()));
        }
        Ok(Self { copies })
    }

    pub fn zeros(n: usize, d: usize) -> Self {
        Self { copies: vec![SpinPoint::zeros(n); d] }
    }

    pub fn n(&self) -> usize {
        self.copies[0].n()
    }

    pub fn d(&self) -> usize {
        self.copies.len()
    }

    pub fn copies(&self) -> &[SpinPoint] {
        &self.copies
    }

    /// The copies packed as matrices: `a^alpha` as column alpha of an `n x d`
    /// matrix and `b^alpha` as row alpha of a `d x n` matrix.
    pub fn to_matrices(&self) -> (CMat, CMat) {
        let (n, d) = (self.n(), self.d());
        let mut a = CMat::zeros(n, d);
        let mut b = CMat::zeros(d, n);
        for (alpha, c) in self.copies.iter().enumerate() {
            a.set_col(alpha, c.a());
            b.set_row(alpha, c.b());
        }
        (a, b)
    }

    pub fn from_matrices(a: &CMat, b: &CMat) -> Result<Self> {
        let p = SPoint::new(a.clone(), b.clone())?;
        Self::new((0..p.d()).map(|alpha| SpinPoint::new(a.col_vec(alpha), b.row_vec(alpha))).collect::<Result<_>>()?)
    }

    /// Product chart: same layout as the `S(n,d)` chart of [`SpinTuple::to_matrices`].
    pub fn to_coords(&self) -> Vec<C64> {
        let (a, b) = self.to_matrices();
        a.as_slice().iter().chain(b.as_slice()).copied().collect()
    }

    pub fn from_coords(n: usize, d: usize, x: &[C64]) -> Result<Self> {
        let p = SPoint::from_coords(n, d, x)?;
        Self::from_matrices(p.a(), p.b())
    }

    pub fn max_abs_diff(&self, other: &SpinTuple) -> Result<f64> {
        let (a1, b1) = self.to_matrices();
        let (a2, b2) = other.to_matrices();
        Ok(a1.max_abs_diff(&a2)?.max(b1.max_abs_diff(&b2)?))
    }

    fn check_guard(&self) -> Result<()> {
        for (alpha, c) in self.copies.iter().enumerate() {
            guard(alpha + 1, c)?;
        }
        Ok(())
    }
}

fn guard(copy: usize, p: &SpinPoint) -> Result<()> {
    let product = p.norm_product();
    if !(product < DOMAIN_GUARD) {
        return Err(Error::DomainGuard { copy, product, bound: DOMAIN_GUARD });
    }
    Ok(())
}

/// Per-copy factors `g_{+,alpha}` and `g_{-,alpha}^{-1}` together with the
/// partial products `h_+^{alpha;gamma} = g_{+,alpha} .. g_{+,gamma}` and
/// `h_-^{alpha;gamma} = g_{-,gamma}^{-1} .. g_{-,alpha}^{-1}`.
#[derive(Clone, Debug)]
pub struct CopyFactors {
    pub g_plus: Vec<CMat>,
    pub g_minus_inv: Vec<CMat>,
}

impl CopyFactors {
    pub fn new(t: &SpinTuple) -> Result<Self> {
        let mut g_plus = Vec::with_capacity(t.d());
        let mut g_minus_inv = Vec::with_capacity(t.d());
        for (alpha, c) in t.copies().iter().enumerate() {
            let (gp, gmi) = g_plus_and_minus_inverse(c).map_err(Error::in_copy(alpha + 1))?;
            g_plus.push(gp);
            g_minus_inv.push(gmi);
        }
        Ok(Self { g_plus, g_minus_inv })
    }

    fn n(&self) -> usize {
        self.g_plus[0].rows()
    }

    /// `h_+^{alpha;gamma}` for 1-based `alpha <= gamma + 1`; empty products are 1.
    pub fn h_plus(&self, alpha: usize, gamma: usize) -> CMat {
        (alpha..=gamma).fold(CMat::identity(self.n()), |acc, k| &acc * &self.g_plus[k - 1])
    }

    /// `h_-^{alpha;gamma} = g_{-,gamma}^{-1} .. g_{-,alpha}^{-1}`.
    pub fn h_minus(&self, alpha: usize, gamma: usize) -> CMat {
        (alpha..=gamma).fold(CMat::identity(self.n()), |acc, k| &self.g_minus_inv[k - 1] * &acc)
    }
}

/// The decoupling map `m`: `A^1 = a^1`, `B^1 = b^1`,
/// `A^alpha = g_+(1) .. g_+(alpha-1) a^alpha`,
/// `B^alpha = b^alpha g_-(alpha-1)^{-1} .. g_-(1)^{-1}`.
pub fn map_m(t: &SpinTuple) -> Result<SPoint> {
    t.check_guard()?;
    let (n, d) = (t.n(), t.d());
    let mut a = CMat::zeros(n, d);
    let mut b = CMat::zeros(d, n);
    let mut h_plus = CMat::identity(n);
    let mut h_minus = CMat::identity(n);
    for (alpha, c) in t.copies().iter().enumerate() {
        a.set_col(alpha, (&h_plus * &c.a_col()).as_slice());
        b.set_row(alpha, (&c.b_row() * &h_minus).as_slice());
        if alpha + 1 < d {
            let (gp, gmi) = g_plus_and_minus_inverse(c).map_err(Error::in_copy(alpha + 1))?;
            h_plus = &h_plus * &gp;
            h_minus = &gmi * &h_minus;
        }
    }
    SPoint::new(a, b)
}

/// Inverse of [`map_m`]: `a^alpha = g_{+,alpha-1}^{-1} .. g_{+,1}^{-1} A^alpha`,
/// `b^alpha = B^alpha g_{-,1} .. g_{-,alpha-1}`, with every `g_{+-}` recomputed
/// from the copies already recovered.
pub fn map_m_inverse(p: &SPoint) -> Result<SpinTuple> {
    let (n, d) = (p.n(), p.d());
    let mut copies = Vec::with_capacity(d);
    // (h_+^{alpha-1})^{-1} and (h_-^{alpha-1})^{-1}
    let mut h_plus_inv = CMat::identity(n);
    let mut h_minus_inv = CMat::identity(n);
    for alpha in 0..d {
        let a = &h_plus_inv * &CMat::column(&p.a().col_vec(alpha));
        let b = &CMat::row(&p.b().row_vec(alpha)) * &h_minus_inv;
        let c = SpinPoint::new(a.into_vec(), b.into_vec())?;
        guard(alpha + 1, &c)?;
        if alpha + 1 < d {
            let (gp, gmi) = g_plus_and_minus_inverse(&c).map_err(Error::in_copy(alpha + 1))?;
            h_plus_inv = &gp.upper_triangular_inverse()? * &h_plus_inv;
            h_minus_inv = &h_minus_inv * &gmi.lower_triangular_inverse()?;
        }
        copies.push(c);
    }
    SpinTuple::new(copies)
}

/// The second decoupling map `F`:
/// `A^alpha = g_+(d)^{-1} .. g_+(alpha)^{-1} a^alpha`,
/// `B^alpha = b^alpha g_-(alpha) .. g_-(d)`.
pub fn map_f(t: &SpinTuple) -> Result<SPoint> {
    t.check_guard()?;
    let (n, d) = (t.n(), t.d());
    let factors = CopyFactors::new(t)?;
    let mut a = CMat::zeros(n, d);
    let mut b = CMat::zeros(d, n);
    // suffix products (g_+(alpha) .. g_+(d))^{-1} and g_-(alpha) .. g_-(d)
    let mut plus_inv = CMat::identity(n);
    let mut minus = CMat::identity(n);
    for alpha in (0..d).rev() {
        plus_inv = &plus_inv * &factors.g_plus[alpha].upper_triangular_inverse()?;
        minus = &factors.g_minus_inv[alpha].lower_triangular_inverse()? * &minus;
        let c = &t.copies()[alpha];
        a.set_col(alpha, (&plus_inv * &c.a_col()).as_slice());
        b.set_row(alpha, (&c.b_row() * &minus).as_slice());
    }
    SPoint::new(a, b)
}

/// Local inverse of [`map_f`] together with the recovered factors
/// `(g^_{+,alpha}, g^_{-,alpha})`, alpha = 1..d.
///
/// For alpha = d, .., 1 factor
/// `1 - g^_{+,alpha+1}..g^_{+,d} A^alpha B^alpha g^_{-,d}^{-1}..g^_{-,alpha+1}^{-1}
///  = g^_{+,alpha}^{-1} g^_{-,alpha}` on the principal branch, then
/// `a^alpha = g^_{+,alpha} .. g^_{+,d} A^alpha`,
/// `b^alpha = B^alpha g^_{-,d}^{-1} .. g^_{-,alpha}^{-1}`.
pub fn map_f_inverse_with_factors(p: &SPoint) -> Result<(SpinTuple, Vec<(CMat, CMat)>)> {
    let (n, d) = (p.n(), p.d());
    let mut copies = vec![SpinPoint::zeros(n); d];
    let mut factors = vec![(CMat::identity(n), CMat::identity(n)); d];
    let mut q_plus = CMat::identity(n);
    let mut q_minus = CMat::identity(n);
    for alpha in (0..d).rev() {
        let step = Error::in_step(alpha + 1);
        let col = CMat::column(&p.a().col_vec(alpha));
        let row = CMat::row(&p.b().row_vec(alpha));
        let conj = &(&(&q_plus * &col) * &row) * &q_minus;
        let m = &CMat::identity(n) - &conj;
        let inv_pair = chi_inverse_local(&m).map_err(step)?;
        let g_plus = inv_pair.hplus().upper_triangular_inverse()?;
        let g_minus = inv_pair.hminus().lower_triangular_inverse()?;
        q_plus = &g_plus * &q_plus;
        q_minus = &q_minus * inv_pair.hminus();
        let a = &q_plus * &col;
        let b = &row * &q_minus;
        copies[alpha] = SpinPoint::new(a.into_vec(), b.into_vec())?;
        factors[alpha] = (g_plus, g_minus);
    }
    Ok((SpinTuple::new(copies)?, factors))
}

pub fn map_f_inverse(p: &SPoint) -> Result<SpinTuple> {
    map_f_inverse_with_factors(p).map(|(t, _)| t)
}

/// The swap `nu: S(n,d) -> S(d,n)`, `(A, B) -> (eta^d B eta^n, eta^n A eta^d)`.
pub fn map_nu(p: &SPoint) -> Result<SPoint> {
    let (en, ed) = (eta(p.n())?, eta(p.d())?);
    SPoint::new(&(&ed * p.b()) * &en, &(&en * p.a()) * &ed)
}

/// The instance `S(d,n) -> S(n,d)` of the swap; `map_nu_back(map_nu(p)) = p`.
pub fn map_nu_back(p: &SPoint) -> Result<SPoint> {
    map_nu(p)
}

fn check_constraint(name: &str, x: C64, y: C64, kappa: C64) -> Result<()> {
    if kappa.norm() == 0.0 {
        return Err(Error::InvalidParameter("kappa must be non-zero".into()));
    }
    let target = -ONE / kappa;
    if (x * y - target).norm() > CONSTRAINT_TOLERANCE * target.norm() {
        return Err(Error::ConstraintViolated(format!("{name}: product {} != -1/kappa = {target}", x * y)));
    }
    Ok(())
}

/// `xi: (A, B) -> (xi_A A eta^d, xi_B eta^d B)` with `xi_A xi_B = -1/kappa`.
pub fn map_xi(p: &SPoint, xi_a: C64, xi_b: C64, kappa: C64) -> Result<SPoint> {
    check_constraint("xi", xi_a, xi_b, kappa)?;
    let ed = eta(p.d())?;
    SPoint::new((p.a() * &ed).scale(xi_a), (&ed * p.b()).scale(xi_b))
}

/// `theta: (A, B) -> (theta_A A, theta_B B)` with `theta_A theta_B = -1/kappa`.
pub fn map_theta(p: &SPoint, theta_a: C64, theta_b: C64, kappa: C64) -> Result<SPoint> {
    check_constraint("theta", theta_a, theta_b, kappa)?;
    SPoint::new(p.a().scale(theta_a), p.b().scale(theta_b))
}

/// The involution `(a^alpha, b^alpha) -> ((b^alpha)^T, (a^alpha)^T)` on every copy.
pub fn iota(t: &SpinTuple) -> SpinTuple {
    SpinTuple {
        copies: t
            .copies()
            .iter()
            .map(|c| SpinPoint::new(c.b().to_vec(), c.a().to_vec()).expect("swap keeps shapes"))
            .collect(),
    }
}
