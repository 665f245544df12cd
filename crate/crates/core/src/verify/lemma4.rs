use num_complex::Complex64 as C64;
use serde::Serialize;

use super::tensors::{as_tensor, r, r_minus, r_plus, tensor_defect};
use super::{bracket_of_functions, jacobian, Diff, DiffScheme};
use crate::brackets::BracketSpec;
use crate::decoupling::{CopyFactors, SpinTuple};
use crate::error::Result;
use crate::tensor_kit::CMat;

/// Largest defects of the bracket identities for the partial products
/// `h_+^beta = g_{+,1} .. g_{+,beta}` and `h_-^beta = g_{-,beta}^{-1} .. g_{-,1}^{-1}`:
/// four brackets of `a^alpha`, `b^alpha` with `h_+-^beta`, and three among the `h_+-`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Lemma4Residuals {
    pub spin_with_h: [f64; 4],
    pub h_with_h: [f64; 3],
}

impl Lemma4Residuals {
    pub fn max(&self) -> f64 {
        self.spin_with_h.iter().chain(&self.h_with_h).copied().fold(0.0, f64::max)
    }
}

fn block(m: &CMat, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> CMat {
    CMat::from_fn(rows.len(), cols.len(), |i, j| m[(rows.start + i, cols.start + j)])
}

pub fn lemma4_residuals(kappa: C64, t: &SpinTuple, scheme: DiffScheme) -> Result<Lemma4Residuals> {
    let (n, d) = (t.n(), t.d());
    let (nn, nd) = (n * n, n * d);
    let x = t.to_coords();
    let partials = |y: &[C64]| -> Result<Vec<C64>> {
        let f = CopyFactors::new(&SpinTuple::from_coords(n, d, y)?)?;
        let mut out = Vec::with_capacity(2 * d * nn);
        for beta in 1..=d {
            out.extend_from_slice(f.h_plus(1, beta).as_slice());
        }
        for beta in 1..=d {
            out.extend_from_slice(f.h_minus(1, beta).as_slice());
        }
        Ok(out)
    };
    let j = jacobian(&partials, &x, Diff::Scheme(scheme))?;
    let pi = BracketSpec::S1Product { kappa, n, d }.evaluate(&x)?.into_matrix();
    let xh = &pi * &j.transpose();
    let hh = bracket_of_functions(&pi, &j, &j);
    let plus_cols = |beta: usize| (beta - 1) * nn..beta * nn;
    let minus_cols = |beta: usize| (d + beta - 1) * nn..(d + beta) * nn;

    let f = CopyFactors::new(t)?;
    let (r0, rp, rm) = (r(n)?, r_plus(n)?, r_minus(n)?);
    let mut out = Lemma4Residuals::default();
    for alpha in 1..=d {
        let a = t.copies()[alpha - 1].a_col();
        let b = t.copies()[alpha - 1].b_row();
        let a_row = |i: usize, _: usize| i * d + alpha - 1;
        let b_row = |_: usize, i: usize| nd + (alpha - 1) * n + i;
        for beta in 1..=d {
            let k = if alpha <= beta { kappa } else { C64::new(0.0, 0.0) };
            let (hp_prev, hp_ab) = (f.h_plus(1, alpha - 1), f.h_plus(alpha, beta));
            let (hm_prev, hm_ab) = (f.h_minus(1, alpha - 1), f.h_minus(alpha, beta));
            let plus_block = block(&xh, 0..xh.rows(), plus_cols(beta));
            let minus_block = block(&xh, 0..xh.rows(), minus_cols(beta));

            let rhs = &(&(&hp_prev.leg2(n) * &rm) * &a.leg1(n)) * &hp_ab;
            let t1 = as_tensor(&rhs.scale(-k), (n, 1, n, n))?;
            let rhs = &(&(&hp_prev * &b.leg1(n)) * &rm) * &hp_ab.leg2(n);
            let t2 = as_tensor(&rhs.scale(k), (1, n, n, n))?;
            let rhs = &(&(&hm_ab.leg2(n) * &rp) * &a.leg1(n)) * &hm_prev;
            let t3 = as_tensor(&rhs.scale(k), (n, 1, n, n))?;
            let rhs = &(&(&b.leg1(n) * &hm_ab.leg2(n)) * &rp) * &hm_prev.leg2(n);
            let t4 = as_tensor(&rhs.scale(-k), (1, n, n, n))?;

            let s = &mut out.spin_with_h;
            s[0] = s[0].max(tensor_defect(&plus_block, a_row, &t1));
            s[1] = s[1].max(tensor_defect(&plus_block, b_row, &t2));
            s[2] = s[2].max(tensor_defect(&minus_block, a_row, &t3));
            s[3] = s[3].max(tensor_defect(&minus_block, b_row, &t4));

            let (hpa, hpb) = (f.h_plus(1, alpha), f.h_plus(1, beta));
            let (hma, hmb) = (f.h_minus(1, alpha), f.h_minus(1, beta));
            let dims = (n, n, n, n);
            let rows = plus_cols(alpha);
            let hs = &mut out.h_with_h;
            if alpha <= beta {
                let lhs = block(&hh, rows.clone(), plus_cols(beta));
                let rhs = &(&(&(&hpa.leg1(n) * &hpa.leg2(n)) * &r0) * &f.h_plus(alpha + 1, beta).leg2(n))
                    - &(&(&r0 * &hpa.leg1(n)) * &hpb.leg2(n));
                hs[0] = hs[0].max(tensor_defect(&lhs, |i, j| i * n + j, &as_tensor(&rhs.scale(kappa), dims)?));
                let lhs = block(&hh, rows.clone(), minus_cols(beta));
                let rhs = &(&(&hmb.leg2(n) * &rp) * &hpa.leg1(n))
                    - &(&(&(&hpa.leg1(n) * &f.h_minus(alpha + 1, beta).leg2(n)) * &rp) * &hma.leg2(n));
                hs[1] = hs[1].max(tensor_defect(&lhs, |i, j| i * n + j, &as_tensor(&rhs.scale(kappa), dims)?));
            }
            if alpha >= beta {
                let lhs = block(&hh, rows, minus_cols(beta));
                let rhs = &(&(&hmb.leg2(n) * &rp) * &hpa.leg1(n))
                    - &(&(&(&hpb.leg1(n) * &rp) * &f.h_plus(beta + 1, alpha).leg1(n)) * &hmb.leg2(n));
                hs[2] = hs[2].max(tensor_defect(&lhs, |i, j| i * n + j, &as_tensor(&rhs.scale(kappa), dims)?));
            }
        }
    }
    Ok(out)
}
