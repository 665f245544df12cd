//! Dense complex matrices, Kronecker-product leg bookkeeping and the constant
//! structure tensors (r-matrices, the flip tensor, `C12`, the anti-diagonal
//! `eta`).
//!
//! A two-leg tensor `T = sum t[i,j,k,l] E_ij (x) E_kl` is stored as a
//! [`Tensor4`]. Flattened, it is the Kronecker operator with entry
//! `[(i*r + k), (j*s + l)]`, so "leg 1" / "leg 2" placements such as `X_1 = X (x) 1`
//! become ordinary matrix products.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const HALF: C64 = C64::new(0.5, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(p) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { row: p / cols, col: p % cols });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Real-valued convenience constructor, mostly for tests.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let v: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&v)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Column vector.
    pub fn column(entries: &[C64]) -> Self {
        Self { rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    /// Row vector.
    pub fn row(entries: &[C64]) -> Self {
        Self { rows: 1, cols: entries.len(), data: entries.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn col_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row_vec(&self, i: usize) -> Vec<C64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn set_col(&mut self, j: usize, v: &[C64]) {
        debug_assert_eq!(v.len(), self.rows);
        for (i, &z) in v.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    pub fn set_row(&mut self, i: usize, v: &[C64]) {
        debug_assert_eq!(v.len(), self.cols);
        self.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(v);
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &CMat) -> Result<CMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "({}x{}) * ({}x{})",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `self (x) rhs`.
    pub fn kron(&self, rhs: &CMat) -> CMat {
        let (p, q) = self.shape();
        let (r, s) = rhs.shape();
        CMat::from_fn(p * r, q * s, |row, col| self[(row / r, col / s)] * rhs[(row % r, col % s)])
    }

    /// `self (x) 1_m`: the matrix placed on leg 1.
    pub fn leg1(&self, m: usize) -> CMat {
        self.kron(&CMat::identity(m))
    }

    /// `1_m (x) self`: the matrix placed on leg 2.
    pub fn leg2(&self, m: usize) -> CMat {
        CMat::identity(m).kron(self)
    }

    /// Entrywise maximum distance.
    pub fn max_abs_diff(&self, other: &CMat) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)] == ZERO))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == ZERO))
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &DMatrix<C64>) -> CMat {
        CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// General inverse (LU with partial pivoting).
    pub fn inverse(&self) -> Result<CMat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let inv = self
            .to_nalgebra()
            .try_inverse()
            .ok_or_else(|| Error::Singular(format!("{}x{} matrix", self.rows, self.cols)))?;
        let out = CMat::from_nalgebra(&inv);
        if !out.is_finite() {
            return Err(Error::Singular("inverse overflowed".into()));
        }
        Ok(out)
    }

    /// Inverse of an upper triangular matrix by back substitution; the result
    /// is exactly upper triangular.
    pub fn upper_triangular_inverse(&self) -> Result<CMat> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::DimensionMismatch("triangular inverse of a non-square matrix".into()));
        }
        let mut inv = CMat::zeros(n, n);
        for j in 0..n {
            if self[(j, j)] == ZERO {
                return Err(Error::NonInvertibleDiagonal(j + 1));
            }
        }
        for j in 0..n {
            inv[(j, j)] = ONE / self[(j, j)];
            for i in (0..j).rev() {
                let mut acc = ZERO;
                for k in i + 1..=j {
                    acc += self[(i, k)] * inv[(k, j)];
                }
                inv[(i, j)] = -acc / self[(i, i)];
            }
        }
        Ok(inv)
    }

    /// Inverse of a lower triangular matrix; the result is exactly lower
    /// triangular.
    pub fn lower_triangular_inverse(&self) -> Result<CMat> {
        Ok(self.transpose().upper_triangular_inverse()?.transpose())
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn zip_with(a: &CMat, b: &CMat, op: impl Fn(C64, C64) -> C64) -> CMat {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in elementwise op");
    CMat { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(&x, &y)| op(x, y)).collect() }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale(-ONE)
    }
}

/// Panics on a shape mismatch; use [`CMat::matmul`] for fallible products.
impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

/// Two-leg tensor `sum t[i,j,k,l] E_ij (x) E_kl` with leg 1 in `Mat(p x q)` and
/// leg 2 in `Mat(r x s)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor4 {
    dims: (usize, usize, usize, usize),
    data: Vec<C64>,
}

impl Tensor4 {
    pub fn zeros(p: usize, q: usize, r: usize, s: usize) -> Self {
        Self { dims: (p, q, r, s), data: vec![ZERO; p * q * r * s] }
    }

    /// `x (x) y` for a leg-1 matrix `x` and leg-2 matrix `y`.
    pub fn product(x: &CMat, y: &CMat) -> Self {
        let (p, q) = x.shape();
        let (r, s) = y.shape();
        let mut t = Self::zeros(p, q, r, s);
        for i in 0..p {
            for j in 0..q {
                for k in 0..r {
                    for l in 0..s {
                        t.data[((i * q + j) * r + k) * s + l] = x[(i, j)] * y[(k, l)];
                    }
                }
            }
        }
        t
    }

    /// Antisymmetrized product `x ^ y = x (x) y - y (x) x`.
    pub fn wedge(x: &CMat, y: &CMat) -> Self {
        &Self::product(x, y) - &Self::product(y, x)
    }

    pub fn dims(&self) -> (usize, usize, usize, usize) {
        self.dims
    }

    /// 0-based entry access.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        let (_, q, r, s) = self.dims;
        self.data[((i * q + j) * r + k) * s + l]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, z: C64) {
        let (_, q, r, s) = self.dims;
        self.data[((i * q + j) * r + k) * s + l] = z;
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dims: self.dims, data: self.data.iter().map(|&z| z * s).collect() }
    }

    /// Exchange the two legs: `x (x) y -> y (x) x`.
    pub fn swap_legs(&self) -> Self {
        let (p, q, r, s) = self.dims;
        let mut t = Self::zeros(r, s, p, q);
        for i in 0..p {
            for j in 0..q {
                for k in 0..r {
                    for l in 0..s {
                        t.set(k, l, i, j, self.get(i, j, k, l));
                    }
                }
            }
        }
        t
    }

    /// Flatten to the `(p*r) x (q*s)` Kronecker operator.
    pub fn to_matrix(&self) -> CMat {
        let (p, q, r, s) = self.dims;
        let mut m = CMat::zeros(p * r, q * s);
        for i in 0..p {
            for j in 0..q {
                for k in 0..r {
                    for l in 0..s {
                        m[(i * r + k, j * s + l)] = self.get(i, j, k, l);
                    }
                }
            }
        }
        m
    }

    pub fn from_matrix(m: &CMat, dims: (usize, usize, usize, usize)) -> Result<Self> {
        let (p, q, r, s) = dims;
        if m.shape() != (p * r, q * s) {
            return Err(Error::DimensionMismatch(format!(
                "{:?} matrix cannot hold a {dims:?} tensor",
                m.shape()
            )));
        }
        let mut t = Self::zeros(p, q, r, s);
        for i in 0..p {
            for j in 0..q {
                for k in 0..r {
                    for l in 0..s {
                        t.set(i, j, k, l, m[(i * r + k, j * s + l)]);
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Tensor4) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

impl Add for &Tensor4 {
    type Output = Tensor4;
    fn add(self, rhs: &Tensor4) -> Tensor4 {
        assert_eq!(self.dims, rhs.dims);
        Tensor4 { dims: self.dims, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Tensor4 {
    type Output = Tensor4;
    fn sub(self, rhs: &Tensor4) -> Tensor4 {
        assert_eq!(self.dims, rhs.dims);
        Tensor4 { dims: self.dims, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

fn check_size(l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidParameter("size must be >= 1".into()));
    }
    Ok(())
}

/// Rectangular elementary matrix with a single 1 at the 1-based position `(j, k)`.
pub fn elementary_rect(rows: usize, cols: usize, j: usize, k: usize) -> Result<CMat> {
    check_size(rows)?;
    check_size(cols)?;
    if j == 0 || j > rows {
        return Err(Error::IndexOutOfRange { index: j, size: rows });
    }
    if k == 0 || k > cols {
        return Err(Error::IndexOutOfRange { index: k, size: cols });
    }
    let mut m = CMat::zeros(rows, cols);
    m[(j - 1, k - 1)] = ONE;
    Ok(m)
}

/// `E_jk(l)`, 1-based.
pub fn elementary(l: usize, j: usize, k: usize) -> Result<CMat> {
    elementary_rect(l, l, j, k)
}

fn e(l: usize, j: usize, k: usize) -> CMat {
    elementary(l, j, k).expect("indices generated in range")
}

/// The Drinfeld-Jimbo r-matrix `1/2 sum_{j<k} E_jk ^ E_kj`.
pub fn dj_r(l: usize) -> Result<Tensor4> {
    check_size(l)?;
    let mut r = Tensor4::zeros(l, l, l, l);
    for j in 1..=l {
        for k in j + 1..=l {
            r = &r + &Tensor4::wedge(&e(l, j, k), &e(l, k, j)).scale(HALF);
        }
    }
    Ok(r)
}

/// The flip tensor `I = sum_{j,k} E_jk (x) E_kj`.
pub fn casimir(l: usize) -> Result<Tensor4> {
    check_size(l)?;
    let mut t = Tensor4::zeros(l, l, l, l);
    for j in 1..=l {
        for k in 1..=l {
            t = &t + &Tensor4::product(&e(l, j, k), &e(l, k, j));
        }
    }
    Ok(t)
}

/// `r_+ = r + I/2` or `r_- = r - I/2`.
pub fn r_pm(l: usize, sign: Sign) -> Result<Tensor4> {
    let half_flip = casimir(l)?.scale(HALF);
    let r = dj_r(l)?;
    Ok(match sign {
        Sign::Plus => &r + &half_flip,
        Sign::Minus => &r - &half_flip,
    })
}

/// `C12 = sum_{i, alpha} E_{i alpha}^{n x d} (x) E_{alpha i}^{d x n}`, dims `(n, d, d, n)`.
pub fn c12(n: usize, d: usize) -> Result<Tensor4> {
    check_size(n)?;
    check_size(d)?;
    let mut t = Tensor4::zeros(n, d, d, n);
    for i in 1..=n {
        for a in 1..=d {
            t = &t + &Tensor4::product(&elementary_rect(n, d, i, a)?, &elementary_rect(d, n, a, i)?);
        }
    }
    Ok(t)
}

/// Anti-diagonal involution `sum_i E_{i, l+1-i}`.
pub fn eta(l: usize) -> Result<CMat> {
    check_size(l)?;
    let mut m = CMat::zeros(l, l);
    for i in 1..=l {
        m = &m + &e(l, i, l + 1 - i);
    }
    Ok(m)
}

/// Weight of the r-matrix family on the flip: `r_s = sum w_s(i,k) E_ik (x) E_ki`
/// with `w_s(i,k) = sgn(k-i)/2 + s/2` (s = 0 for `r`, +-1 for `r_+-`). 0-based.
#[inline]
pub fn r_weight(shift: f64, i: usize, k: usize) -> C64 {
    let sgn = match k.cmp(&i) {
        std::cmp::Ordering::Greater => 1.0,
        std::cmp::Ordering::Less => -1.0,
        std::cmp::Ordering::Equal => 0.0,
    };
    C64::new(0.5 * sgn + 0.5 * shift, 0.0)
}

/// `sgn(a - b)` as a float.
#[inline]
pub fn sgn(a: usize, b: usize) -> f64 {
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => 1.0,
        std::cmp::Ordering::Less => -1.0,
        std::cmp::Ordering::Equal => 0.0,
    }
}
