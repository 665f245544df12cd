//! r-matrices as operators and comparison of bracket matrices with tensors.

use crate::error::Result;
use crate::tensor_kit::{dj_r, r_pm, CMat, Sign, Tensor4};

pub(crate) fn r(l: usize) -> Result<CMat> {
    Ok(dj_r(l)?.to_matrix())
}

pub(crate) fn r_plus(l: usize) -> Result<CMat> {
    Ok(r_pm(l, Sign::Plus)?.to_matrix())
}

pub(crate) fn r_minus(l: usize) -> Result<CMat> {
    Ok(r_pm(l, Sign::Minus)?.to_matrix())
}

/// Largest `|brackets[(row(i,j), k*s + l)] - t[i,j,k,l]|` where `t` has dims
/// `(p,q,r,s)` and `row` maps the first two tensor indices to a row of the
/// bracket matrix.
pub(crate) fn tensor_defect(brackets: &CMat, row: impl Fn(usize, usize) -> usize, t: &Tensor4) -> f64 {
    let (p, q, r, s) = t.dims();
    let mut worst: f64 = 0.0;
    for i in 0..p {
        for j in 0..q {
            let row = row(i, j);
            for k in 0..r {
                for l in 0..s {
                    worst = worst.max((brackets[(row, k * s + l)] - t.get(i, j, k, l)).norm());
                }
            }
        }
    }
    worst
}

/// Operator product as a tensor with the given leg dimensions.
pub(crate) fn as_tensor(m: &CMat, dims: (usize, usize, usize, usize)) -> Result<Tensor4> {
    Tensor4::from_matrix(m, dims)
}
