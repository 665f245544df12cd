//! The maps of the theory written as functions between coordinate charts.

use num_complex::Complex64 as C64;

use crate::decoupling::{self, SPoint, SpinTuple};
use crate::error::Result;
use crate::factorization::{self, DualPair, SpinPoint};
use crate::tensor_kit::CMat;

pub fn m(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::map_m(&SpinTuple::from_coords(n, d, x)?)?.to_coords())
}

pub fn m_inverse(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::map_m_inverse(&SPoint::from_coords(n, d, x)?)?.to_coords())
}

pub fn f(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::map_f(&SpinTuple::from_coords(n, d, x)?)?.to_coords())
}

pub fn f_inverse(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::map_f_inverse(&SPoint::from_coords(n, d, x)?)?.to_coords())
}

pub fn theta(n: usize, d: usize, (ta, tb): (C64, C64), kappa: C64, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::map_theta(&SPoint::from_coords(n, d, x)?, ta, tb, kappa)?.to_coords())
}

pub fn theta_f(n: usize, d: usize, t: (C64, C64), kappa: C64, x: &[C64]) -> Result<Vec<C64>> {
    theta(n, d, t, kappa, &f(n, d, x)?)
}

pub fn xi(n: usize, d: usize, (xa, xb): (C64, C64), kappa: C64, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::map_xi(&SPoint::from_coords(n, d, x)?, xa, xb, kappa)?.to_coords())
}

/// `S(n,d) -> S(d,n)`.
pub fn nu(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::map_nu(&SPoint::from_coords(n, d, x)?)?.to_coords())
}

/// The involution on the product chart of `d` spin copies.
pub fn iota(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(decoupling::iota(&SpinTuple::from_coords(n, d, x)?).to_coords())
}

/// `(h+, h-) -> h+ h-^{-1}`, from dual-group free coordinates to `GL(l)`.
pub fn chi(l: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(factorization::chi(&DualPair::from_free_coords(l, x)?)?.into_vec())
}

/// `(a, b) -> (g+, g-)` in dual-group free coordinates.
pub fn g_pm(n: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(factorization::g_pm(&SpinPoint::from_coords(n, x)?)?.to_free_coords())
}

/// `(a, b) -> (calG+, calG-)` on the product chart.
pub fn calg_pm(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(factorization::calg_pm(&SpinTuple::from_coords(n, d, x)?)?.to_free_coords())
}

pub fn gamma(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(factorization::gamma(&SPoint::from_coords(n, d, x)?).into_vec())
}

pub fn gamma_pm(n: usize, d: usize, x: &[C64]) -> Result<Vec<C64>> {
    Ok(factorization::gamma_pm(&SPoint::from_coords(n, d, x)?)?.to_free_coords())
}

/// `(g, (A, B)) -> (g A, B g^{-1})`.
pub fn gl_n_action(n: usize, d: usize, g: &[C64], x: &[C64]) -> Result<Vec<C64>> {
    let g = CMat::new(n, n, g.to_vec())?;
    let p = SPoint::from_coords(n, d, x)?;
    Ok(SPoint::new(&g * p.a(), p.b().matmul(&g.inverse()?)?)?.to_coords())
}

/// `(g, (A, B)) -> (A g^{-1}, g B)`.
pub fn gl_d_action(n: usize, d: usize, g: &[C64], x: &[C64]) -> Result<Vec<C64>> {
    let g = CMat::new(d, d, g.to_vec())?;
    let p = SPoint::from_coords(n, d, x)?;
    Ok(SPoint::new(p.a().matmul(&g.inverse()?)?, &g * p.b())?.to_coords())
}
