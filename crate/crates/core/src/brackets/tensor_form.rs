//! Reference evaluation of the brackets from their tensor forms, by explicit
//! Kronecker products and r-matrix multiplication. Slow; used to cross-check
//! the componentwise implementations.

use num_complex::Complex64 as C64;

use super::{AoKind, Bivector, Chart};
use crate::decoupling::SPoint;
use crate::error::Result;
use crate::tensor_kit::{c12, dj_r, eta, r_pm, CMat, Sign, Tensor4, ONE};

struct Blocks {
    aa: Tensor4,
    bb: Tensor4,
    ab: Tensor4,
}

fn r(l: usize) -> Result<CMat> {
    Ok(dj_r(l)?.to_matrix())
}

fn rs(l: usize, sign: Sign) -> Result<CMat> {
    Ok(r_pm(l, sign)?.to_matrix())
}

/// `r A1A2`, `A1A2 r`, `B1B2 r`, `r B1B2`, `B2 r_+ A1`, `A1 r_s B2` as tensors.
struct Terms {
    r_aa: CMat,
    aa_r: CMat,
    bb_r: CMat,
    r_bb: CMat,
    b_rp_a: CMat,
    a_rs_b: CMat,
}

fn terms(a: &CMat, b: &CMat, right: Sign) -> Result<Terms> {
    let (n, d) = (a.rows(), a.cols());
    let aa = Tensor4::product(a, a).to_matrix();
    let bb = Tensor4::product(b, b).to_matrix();
    Ok(Terms {
        r_aa: &r(n)? * &aa,
        aa_r: &aa * &r(d)?,
        bb_r: &bb * &r(n)?,
        r_bb: &r(d)? * &bb,
        b_rp_a: &(&b.leg2(n) * &rs(n, Sign::Plus)?) * &a.leg1(n),
        a_rs_b: &(&a.leg1(d) * &rs(d, right)?) * &b.leg2(d),
    })
}

fn blocks_s(kappa: C64, a: &CMat, b: &CMat) -> Result<Blocks> {
    let (n, d) = (a.rows(), a.cols());
    let t = terms(a, b, Sign::Plus)?;
    let c = c12(n, d)?.to_matrix();
    Ok(Blocks {
        aa: Tensor4::from_matrix(&(&t.r_aa + &t.aa_r).scale(-kappa), (n, d, n, d))?,
        bb: Tensor4::from_matrix(&(&t.bb_r + &t.r_bb).scale(-kappa), (d, n, d, n))?,
        ab: Tensor4::from_matrix(&(&(&t.b_rp_a + &t.a_rs_b) + &c).scale(kappa), (n, d, d, n))?,
    })
}

fn blocks_ao(kappa: C64, a: &CMat, b: &CMat, scaled_constant: bool) -> Result<Blocks> {
    let (n, d) = (a.rows(), a.cols());
    let t = terms(a, b, Sign::Minus)?;
    let c = c12(n, d)?.to_matrix();
    let mut ab = (&t.a_rs_b - &t.b_rp_a).scale(kappa);
    ab = if scaled_constant { &ab + &c.scale(kappa) } else { &ab - &c };
    Ok(Blocks {
        aa: Tensor4::from_matrix(&(&t.r_aa - &t.aa_r).scale(kappa), (n, d, n, d))?,
        bb: Tensor4::from_matrix(&(&t.bb_r - &t.r_bb).scale(kappa), (d, n, d, n))?,
        ab: Tensor4::from_matrix(&ab, (n, d, d, n))?,
    })
}

fn assemble(blocks: &Blocks, n: usize, d: usize) -> Bivector {
    let nd = n * d;
    Bivector::from_upper(Chart::S { n, d }, |p, q| {
        if q < nd {
            blocks.aa.get(p / d, p % d, q / d, q % d)
        } else if p >= nd {
            let (p, q) = (p - nd, q - nd);
            blocks.bb.get(p / n, p % n, q / n, q % n)
        } else {
            let q = q - nd;
            blocks.ab.get(p / d, p % d, q / n, q % n)
        }
    })
}

pub fn bivector_s(kappa: C64, p: &SPoint) -> Result<Bivector> {
    Ok(assemble(&blocks_s(kappa, p.a(), p.b())?, p.n(), p.d()))
}

pub fn bivector_ao(kind: AoKind, kappa: C64, p: &SPoint) -> Result<Bivector> {
    let (n, d) = (p.n(), p.d());
    let blocks = match kind {
        AoKind::Plus => blocks_ao(kappa, p.a(), p.b(), false)?,
        AoKind::Prime => blocks_ao(kappa, p.a(), p.b(), true)?,
        AoKind::Minus => {
            // X = A eta and Y = eta B obey the AOplus relations; A = X eta, B = eta Y.
            let e = eta(d)?;
            let inner = blocks_ao(kappa, &(p.a() * &e), &(&e * p.b()), false)?;
            let ee = e.kron(&e);
            Blocks {
                aa: Tensor4::from_matrix(&(&inner.aa.to_matrix() * &ee), (n, d, n, d))?,
                bb: Tensor4::from_matrix(&(&ee * &inner.bb.to_matrix()), (d, n, d, n))?,
                ab: Tensor4::from_matrix(&(&(&e.leg2(n) * &inner.ab.to_matrix()) * &e.leg1(n)), (n, d, d, n))?,
            }
        }
    };
    Ok(assemble(&blocks, n, d))
}

fn group_bivector(chart: Chart, l: usize, block: impl Fn(usize, usize) -> Result<Tensor4>) -> Result<Bivector> {
    let ll = l * l;
    let blocks = [[block(0, 0)?, block(0, 1)?], [block(1, 0)?, block(1, 1)?]];
    Ok(Bivector::from_upper(chart, |p, q| {
        let (bp, bq) = (p / ll, q / ll);
        let (p, q) = (p % ll, q % ll);
        blocks[bp][bq].get(p / l, p % l, q / l, q % l)
    }))
}

/// `kappa [X1 Y2, r_s]` as a tensor.
fn commutator(kappa: C64, x: &CMat, y: &CMat, rm: &CMat) -> Result<Tensor4> {
    let l = x.rows();
    let xy = Tensor4::product(x, y).to_matrix();
    Tensor4::from_matrix(&(&(&xy * rm) - &(rm * &xy)).scale(kappa), (l, l, l, l))
}

pub fn bivector_gl_mult(kappa: C64, g: &CMat) -> Result<Bivector> {
    let l = g.rows();
    let rm = r(l)?;
    group_bivector(Chart::Gl { l }, l, |_, _| commutator(kappa, g, g, &rm))
}

pub fn bivector_double(kappa: C64, u: &CMat, v: &CMat) -> Result<Bivector> {
    let l = u.rows();
    let (rm, rp) = (r(l)?, rs(l, Sign::Plus)?);
    group_bivector(Chart::Double { l }, l, |bp, bq| match (bp, bq) {
        (0, 0) => commutator(kappa, u, u, &rm),
        (1, 1) => commutator(kappa, v, v, &rm),
        (0, _) => commutator(kappa, u, v, &rp),
        _ => Ok(commutator(kappa, u, v, &rp)?.swap_legs().scale(-ONE)),
    })
}

pub fn bivector_sts(kappa: C64, h: &CMat) -> Result<Bivector> {
    let l = h.rows();
    let (h1, h2) = (h.leg1(l), h.leg2(l));
    let (rm, rminus, rplus) = (r(l)?, rs(l, Sign::Minus)?, rs(l, Sign::Plus)?);
    let hh = &h1 * &h2;
    let total = &(&(&(&h1 * &rminus) * &h2) + &(&(&h2 * &rplus) * &h1)) - &(&(&hh * &rm) + &(&rm * &hh));
    let t = Tensor4::from_matrix(&total.scale(kappa), (l, l, l, l))?;
    group_bivector(Chart::Gl { l }, l, |_, _| Ok(t.clone()))
}
