use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tensor_kit::{elementary, CMat, Tensor4};

/// `<(U,V), (X,Y)>_kappa = (tr(UX) - tr(VY)) / kappa`.
pub fn pairing(kappa: C64, (u, v): (&CMat, &CMat), (x, y): (&CMat, &CMat)) -> Result<C64> {
    Ok((u.matmul(x)?.trace() - v.matmul(y)?.trace()) / kappa)
}

/// Dual bases `T^a = (X^a, X^a)` of the diagonal subalgebra and
/// `T_a = (Z_a, W_a)` of its complement under the pairing.
#[derive(Clone, Debug)]
pub struct DualBases {
    pub kappa: C64,
    pub x: Vec<CMat>,
    pub zw: Vec<(CMat, CMat)>,
}

impl DualBases {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `sum_a X^a (x) Z_a`.
    pub fn sum_xz(&self) -> Tensor4 {
        self.sum(|(z, _)| z)
    }

    /// `sum_a X^a (x) W_a`.
    pub fn sum_xw(&self) -> Tensor4 {
        self.sum(|(_, w)| w)
    }

    fn sum(&self, pick: impl Fn(&(CMat, CMat)) -> &CMat) -> Tensor4 {
        let l = self.x[0].rows();
        self.x.iter().zip(&self.zw).fold(Tensor4::zeros(l, l, l, l), |acc, (x, zw)| &acc + &Tensor4::product(x, pick(zw)))
    }

    /// Largest deviation of `<T^a, T_b>` from `delta_ab`.
    pub fn duality_defect(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (a, x) in self.x.iter().enumerate() {
            for (b, (z, w)) in self.zw.iter().enumerate() {
                let expect = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((pairing(self.kappa, (x, x), (z, w))? - expect).norm());
            }
        }
        Ok(worst)
    }
}

/// Builds the dual of the elementary basis `T^a = (E_jk, E_jk)` by inverting
/// the Gram matrix against the complement basis
/// `(E_jk, 0)` (j<k), `(0, E_jk)` (j>k), `(E_jj, -E_jj)`.
pub fn dual_bases(l: usize, kappa: C64) -> Result<DualBases> {
    if l == 0 {
        return Err(Error::InvalidParameter("l must be >= 1".into()));
    }
    if kappa.norm() == 0.0 {
        return Err(Error::InvalidParameter("kappa must be non-zero".into()));
    }
    let mut x = Vec::with_capacity(l * l);
    let mut complement = Vec::with_capacity(l * l);
    for j in 1..=l {
        for k in 1..=l {
            let e = elementary(l, j, k)?;
            x.push(e.clone());
            let zero = CMat::zeros(l, l);
            complement.push(match j.cmp(&k) {
                std::cmp::Ordering::Less => (e, zero),
                std::cmp::Ordering::Greater => (zero, e),
                std::cmp::Ordering::Equal => (e.clone(), -&e),
            });
        }
    }
    let m = l * l;
    let mut gram = CMat::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            gram[(a, b)] = pairing(kappa, (&x[a], &x[a]), (&complement[b].0, &complement[b].1))?;
        }
    }
    let coef = gram.inverse()?;
    let zw = (0..m)
        .map(|c| {
            complement.iter().enumerate().fold((CMat::zeros(l, l), CMat::zeros(l, l)), |(z, w), (b, (u, v))| {
                (&z + &u.scale(coef[(b, c)]), &w + &v.scale(coef[(b, c)]))
            })
        })
        .collect();
    Ok(DualBases { kappa, x, zw })
}
