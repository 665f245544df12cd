//! The verification suites. Every suite is a list of checks; every check
//! sweeps `samples` seeded points in parallel and merges by sample index.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use plie_core::brackets::{BracketSpec, HoloFn1};
use plie_core::decoupling::{self, SPoint};
use plie_core::factorization::SpinPoint;
use plie_core::verify::{self, maps, CoordMap, Diff, Sample, VerificationReport};
use plie_core::{Error, Result};
use rayon::prelude::*;

use crate::config::{RunConfig, Suite};
use crate::report::{Check, RunReport};
use crate::sampling::{digest, Sampler};

/// Tolerance of the Jacobi checks for the non-polynomial brackets.
pub const ZAK_JACOBI_TOL: f64 = 1e-8;
/// Jacobi residual a bracket violating the compatibility condition must exceed.
pub const ZAK_VIOLATION_BOUND: f64 = 1e-4;
pub const ZAK_CONDITION_TOL: f64 = 1e-12;
pub const RANK_SV_TOL: f64 = 1e-8;

const ONE: C64 = C64::new(1.0, 0.0);

pub fn run(cfg: &RunConfig) -> RunReport {
    let suites: Vec<Suite> = if cfg.suite == Suite::All { Suite::EACH.to_vec() } else { vec![cfg.suite] };
    let checks = suites.into_iter().flat_map(|s| run_one(cfg, s)).collect();
    RunReport::new(cfg, checks)
}

fn run_one(cfg: &RunConfig, suite: Suite) -> Vec<Check> {
    let ctx = Ctx { cfg, suite, radius: cfg.radius_for(suite) };
    match suite {
        Suite::Jacobi => jacobi(&ctx),
        Suite::DecoupleM => decouple_m(&ctx),
        Suite::DecoupleF => decouple_f(&ctx),
        Suite::Factorization => factorization(&ctx),
        Suite::AoMaps => ao_maps(&ctx),
        Suite::Moment => moment(&ctx),
        Suite::Lemma4 => lemma4(&ctx),
        Suite::Symplectic => symplectic(&ctx),
        Suite::Rank => rank(&ctx),
        Suite::Zakrzewski => zakrzewski(&ctx),
        Suite::Actions => actions(&ctx),
        Suite::All => unreachable!("expanded by run"),
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    suite: Suite,
    radius: f64,
}

/// One column of a sweep: name, spec summary, tolerance.
struct Column {
    name: String,
    spec: String,
    tol: f64,
}

fn col(name: &str, spec: impl Into<String>, tol: f64) -> Column {
    Column { name: name.into(), spec: spec.into(), tol }
}

impl Ctx<'_> {
    fn kappa(&self) -> C64 {
        self.cfg.kappa
    }

    fn fd(&self) -> Diff {
        Diff::Scheme(self.cfg.scheme())
    }

    /// Runs `eval` on every sample and splits its residual vector into one
    /// check per column.
    fn sweep<F>(&self, stream: &str, columns: Vec<Column>, eval: F) -> Vec<Check>
    where
        F: Fn(&mut Sampler) -> (Vec<C64>, Result<Vec<f64>>) + Sync,
    {
        self.sweep_n(stream, self.cfg.samples, columns, eval)
    }

    fn sweep_n<F>(&self, stream: &str, samples: usize, columns: Vec<Column>, eval: F) -> Vec<Check>
    where
        F: Fn(&mut Sampler) -> (Vec<C64>, Result<Vec<f64>>) + Sync,
    {
        let stream = format!("{}/{stream}", self.suite);
        let outcomes: Vec<(String, std::result::Result<Vec<f64>, String>)> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let (point, res) = eval(&mut Sampler::new(self.cfg.seed, &stream, i));
                (digest(&point), res.map_err(|e| e.to_string()))
            })
            .collect();
        columns
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                let samples = outcomes
                    .iter()
                    .map(|(dg, res)| Sample { residual: res.as_ref().map(|v| v[k]).map_err(Clone::clone), digest: dg.clone() })
                    .collect();
                Check {
                    name: format!("{}/{}", self.suite, c.name),
                    report: VerificationReport::from_samples(self.suite.name(), &c.spec, self.cfg.seed, c.tol, samples),
                    values: BTreeMap::new(),
                }
            })
            .collect()
    }

    fn single<F>(&self, column: Column, eval: F) -> Check
    where
        F: Fn(&mut Sampler) -> (Vec<C64>, Result<f64>) + Sync,
    {
        let stream = column.name.clone();
        self.sweep(&stream, vec![column], |s| {
            let (p, r) = eval(s);
            (p, r.map(|v| vec![v]))
        })
        .pop()
        .expect("one column")
    }
}

fn jacobi(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d, l) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d, ctx.cfg.l);
    let scheme = ctx.cfg.scheme();
    let mut specs = vec![
        BracketSpec::S { kappa: k, n, d },
        BracketSpec::AoPlus { kappa: k, n, d },
        BracketSpec::AoMinus { kappa: k, n, d },
        BracketSpec::Prime { kappa: k, n, d },
        BracketSpec::GlMult { kappa: k, l },
        BracketSpec::Double { kappa: k, l },
        BracketSpec::Sts { kappa: k, l },
    ];
    let mut checks: Vec<Check> = specs
        .drain(..)
        .map(|spec| {
            let dim = spec.chart().dim();
            ctx.single(col(spec.name(), spec.summary(), ctx.cfg.tol_exact), |s| {
                let x = s.coords(dim, ctx.radius);
                let r = verify::jacobi_residual(&spec, &x, scheme);
                (x, r)
            })
        })
        .collect();
    let spec = BracketSpec::DualGroup { kappa: k, l };
    checks.push(ctx.single(col(spec.name(), spec.summary(), ctx.cfg.tol_exact), |s| {
        let x = s.dual_near_identity(l, ctx.radius.min(0.5));
        let r = verify::jacobi_residual(&spec, &x, scheme);
        (x, r)
    }));
    checks
}

fn decouple_m(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d);
    let src = BracketSpec::S1Product { kappa: k, n, d };
    let tgt = BracketSpec::S { kappa: k, n, d };
    let columns = vec![
        col("poisson-m", format!("m: {} -> {}", src.summary(), tgt.summary()), ctx.cfg.tol_fd),
        col("round-trip-m", "m^-1 o m", ctx.cfg.tol_exact),
    ];
    ctx.sweep("m", columns, |s| {
        let t = s.tuple(n, d, ctx.radius);
        let x = t.to_coords();
        let r = (|| {
            let push = verify::poisson_map_residual(&src, &tgt, &|y| maps::m(n, d, y), &x, ctx.fd())?;
            let back = decoupling::map_m_inverse(&decoupling::map_m(&t)?)?;
            Ok(vec![push, back.max_abs_diff(&t)?])
        })();
        (x, r)
    })
}

fn theta_constants(kappa: C64) -> (C64, C64) {
    (ONE, -ONE / kappa)
}

fn decouple_f(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d);
    let src = BracketSpec::S1Product { kappa: k, n, d };
    let prime = BracketSpec::Prime { kappa: k, n, d };
    let ao = BracketSpec::AoPlus { kappa: k, n, d };
    let theta = theta_constants(k);
    let columns = vec![
        col("poisson-F", format!("F: {} -> {}", src.summary(), prime.summary()), ctx.cfg.tol_fd),
        col("poisson-theta-F", format!("theta o F: {} -> {}", src.summary(), ao.summary()), ctx.cfg.tol_fd),
        col("round-trip-F", "F^-1 o F", ctx.cfg.tol_exact),
        col("ao-res", "1 + kappa calA calB = calG+^-1 calG-", ctx.cfg.tol_exact),
    ];
    ctx.sweep("F", columns, |s| {
        let t = s.tuple(n, d, ctx.radius);
        let x = t.to_coords();
        let r = (|| {
            let f = verify::poisson_map_residual(&src, &prime, &|y| maps::f(n, d, y), &x, ctx.fd())?;
            let tf = verify::poisson_map_residual(&src, &ao, &|y| maps::theta_f(n, d, theta, k, y), &x, ctx.fd())?;
            let back = decoupling::map_f_inverse(&decoupling::map_f(&t)?)?;
            let ids = verify::identity_residuals(k, theta, &t)?;
            Ok(vec![f, tf, back.max_abs_diff(&t)?, ids.ao_res])
        })();
        (x, r)
    })
}

fn factorization(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d);
    let tol = ctx.cfg.tol_exact;
    let columns = vec![
        col("factid1", "1 + a b = g+ g-^-1", tol),
        col("factid2", "1 + A B = calG+ calG-^-1", tol),
        col("hat-other", "partial hat products", tol),
        col("hat-gamma", "1 - A^ B^ = calG+^-1 calG-", tol),
        col("iota-g", "g+- o iota", tol),
        col("iota-h", "h+-^(alpha;gamma) o iota", tol),
        col("gamma-chi", "chi(Gamma+-) = Gamma", tol),
    ];
    ctx.sweep("identities", columns, |s| {
        let t = s.tuple(n, d, ctx.radius);
        let r = verify::identity_residuals(k, theta_constants(k), &t)
            .map(|i| vec![i.factid1, i.factid2, i.hat_other, i.hat_gamma, i.iota_g, i.iota_h, i.gamma_chi]);
        (t.to_coords(), r)
    })
}

fn ao_maps(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d, l) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d, ctx.cfg.l);
    let (exact, fd) = (ctx.cfg.tol_exact, ctx.cfg.tol_fd);
    let s = BracketSpec::S { kappa: k, n, d };
    let consts = theta_constants(k);
    let mut checks = Vec::new();

    let linear: Vec<(&str, BracketSpec, BracketSpec, Box<CoordMap>)> = vec![
        ("xi", s.clone(), BracketSpec::AoPlus { kappa: -k, n, d }, Box::new(move |y| maps::xi(n, d, consts, k, y))),
        (
            "theta",
            BracketSpec::Prime { kappa: k, n, d },
            BracketSpec::AoPlus { kappa: k, n, d },
            Box::new(move |y| maps::theta(n, d, consts, k, y)),
        ),
        ("nu", s.clone(), BracketSpec::S { kappa: -k, n: d, d: n }, Box::new(move |y| maps::nu(n, d, y))),
        ("Gamma", s.clone(), BracketSpec::Sts { kappa: k, l: n }, Box::new(move |y| maps::gamma(n, d, y))),
    ];
    for (name, src, tgt, map) in &linear {
        let spec = format!("{name}: {} -> {}", src.summary(), tgt.summary());
        checks.push(ctx.single(col(&format!("poisson-{name}"), spec, exact), |smp| {
            let x = smp.coords(src.chart().dim(), ctx.radius);
            let r = verify::poisson_map_residual(src, tgt, map.as_ref(), &x, Diff::Exact);
            (x, r)
        }));
    }

    let spin = BracketSpec::S { kappa: k, n, d: 1 };
    let dual_n = BracketSpec::DualGroup { kappa: k, l: n };
    checks.push(ctx.single(col("poisson-g-pm", format!("(g+, g-): {} -> {}", spin.summary(), dual_n.summary()), fd), |smp| {
        let x = smp.coords(2 * n, ctx.radius);
        let r = verify::poisson_map_residual(&spin, &dual_n, &|y| maps::g_pm(n, y), &x, ctx.fd());
        (x, r)
    }));
    let product = BracketSpec::S1Product { kappa: k, n, d };
    checks.push(ctx.single(
        col("poisson-calG-pm", format!("(calG+, calG-): {} -> {}", product.summary(), dual_n.summary()), fd),
        |smp| {
            let x = smp.coords(2 * n * d, ctx.radius);
            let r = verify::poisson_map_residual(&product, &dual_n, &|y| maps::calg_pm(n, d, y), &x, ctx.fd());
            (x, r)
        },
    ));
    let dual_l = BracketSpec::DualGroup { kappa: k, l };
    let sts_l = BracketSpec::Sts { kappa: k, l };
    checks.push(ctx.single(col("poisson-chi", format!("chi: {} -> {}", dual_l.summary(), sts_l.summary()), fd), |smp| {
        let x = smp.dual_near_identity(l, ctx.radius);
        let r = verify::poisson_map_residual(&dual_l, &sts_l, &|y| maps::chi(l, y), &x, ctx.fd());
        (x, r)
    }));

    checks.push(ctx.single(col("anti-poisson-iota", format!("iota on {}", product.summary()), exact), |smp| {
        let x = smp.coords(2 * n * d, ctx.radius);
        let r = verify::anti_poisson_residual(&product, &|y| maps::iota(n, d, y), &x, Diff::Exact);
        (x, r)
    }));
    let zak = zak_spec(k, n, zak_pairs().remove(0));
    checks.push(ctx.single(col("anti-poisson-iota-zak", format!("iota on {}", zak.summary()), exact), |smp| {
        let x = smp.coords(2 * n, ctx.radius);
        let r = verify::anti_poisson_residual(&zak, &|y| maps::iota(n, 1, y), &x, Diff::Exact);
        (x, r)
    }));
    checks
}

fn moment(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d);
    let (exact, fd) = (ctx.cfg.tol_exact, ctx.cfg.tol_fd);
    let columns = vec![
        col("Ga1", "{Gamma1, Gamma2} = kappa STS(Gamma)", exact),
        col("Ga2", "{A1, Gamma2}, {B1, Gamma2}", exact),
        col("mom1-g", "moment conditions of (g+, g-)", fd),
        col("mom1-Gamma", "moment conditions of (Gamma+, Gamma-)", fd),
        col("Ga1-prime", "{Gamma^1, Gamma^2}' = -kappa STS(Gamma^)", fd),
        col("Ga2-prime", "{A^1, Gamma^2}', {B^1, Gamma^2}'", fd),
    ];
    ctx.sweep("moment", columns, |s| {
        let p = s.s_point(n, d, ctx.radius);
        let r = verify::moment_residuals(k, &p, ctx.cfg.scheme())
            .map(|m| vec![m.ga1, m.ga2, m.mom1_g, m.mom1_gamma, m.ga1_prime, m.ga2_prime]);
        (p.to_coords(), r)
    })
}

fn lemma4(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d);
    let fd = ctx.cfg.tol_fd;
    let mut columns: Vec<Column> =
        (1..=4).map(|i| col(&format!("spin-h-{i}"), format!("brackets of a, b with h+-, identity {i}"), fd)).collect();
    columns.extend((1..=3).map(|i| col(&format!("h-h-{i}"), format!("brackets among h+-, identity {i}"), fd)));
    ctx.sweep("lemma4", columns, |s| {
        let t = s.tuple(n, d, ctx.radius);
        let r = verify::lemma4_residuals(k, &t, ctx.cfg.scheme())
            .map(|l| l.spin_with_h.iter().chain(&l.h_with_h).copied().collect());
        (t.to_coords(), r)
    })
}

fn symplectic(ctx: &Ctx) -> Vec<Check> {
    let (k, n) = (ctx.kappa(), ctx.cfg.n);
    let mut checks = vec![ctx.single(col("inversion", format!("Omega Pi = 1 on S(n={n},1)"), ctx.cfg.tol_exact), |s| {
        let p = s.spin(n, ctx.radius);
        let r = verify::symplectic_inversion_residual(k, &p);
        (p.to_coords(), r)
    })];
    // a_1 b_1 = 1 and a_2 b_2 = -1 give G_2 = 0 with G_1 = 1.
    let m = n.max(2);
    let mut a = vec![C64::new(0.0, 0.0); m];
    let mut b = a.clone();
    (a[0], b[0], a[1], b[1]) = (ONE, ONE, ONE, -ONE);
    let p = SpinPoint::new(a, b).expect("shape");
    let raised = matches!(verify::symplectic_matrix(k, &p), Err(Error::ZeroG(2)));
    let mut check = deterministic(ctx, "zero-G", format!("ZeroG(2) raised on S(n={m},1)"), &p.to_coords(), Ok(if raised { 0.0 } else { 1.0 }));
    check.values.insert("raised".into(), raised.into());
    checks.push(check);
    checks
}

/// A check at one fixed point, with a residual that must vanish.
fn deterministic(ctx: &Ctx, name: &str, spec: String, point: &[C64], residual: Result<f64>) -> Check {
    let sample = Sample { residual: residual.map_err(|e| e.to_string()), digest: digest(point) };
    Check {
        name: format!("{}/{name}", ctx.suite),
        report: VerificationReport::from_samples(ctx.suite.name(), &spec, ctx.cfg.seed, 0.0, vec![sample]),
        values: BTreeMap::new(),
    }
}

fn rank_check(ctx: &Ctx, name: &str, spec: &BracketSpec, x: &[C64], ok: impl Fn(usize) -> bool, expected: &str) -> Check {
    let rank = verify::rank_at(spec, x, RANK_SV_TOL);
    let residual = rank.as_ref().map(|&r| if ok(r) { 0.0 } else { 1.0 }).map_err(|e| Error::Evaluation(e.to_string()));
    let mut check = deterministic(ctx, name, format!("rank of {} is {expected}", spec.summary()), x, residual);
    if let Ok(r) = rank {
        check.values.insert("rank".into(), r.into());
    }
    check.values.insert("expected".into(), expected.into());
    check
}

fn rank(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d);
    let s = BracketSpec::S { kappa: k, n, d };
    let full = 2 * n * d;
    let mut checks = vec![rank_check(ctx, "origin", &s, &vec![C64::new(0.0, 0.0); full], |r| r == full, &full.to_string())];
    if n >= 2 && d >= 2 {
        let mut a = plie_core::tensor_kit::CMat::zeros(n, d);
        let mut b = plie_core::tensor_kit::CMat::zeros(d, n);
        a[(n - 1, 0)] = ONE;
        b[(0, n - 1)] = -ONE;
        let x = SPoint::new(a, b).expect("shape").to_coords();
        let expected = 2 * (n - 1) * (d - 1);
        checks.push(rank_check(ctx, "degenerate", &s, &x, |r| r == expected, &expected.to_string()));
    }
    // Exactly one G_i vanishes: G_n = 0 from a_n b_n = -1, restored by a_{n-1} b_{n-1} = 1.
    let spin = BracketSpec::S { kappa: k, n, d: 1 };
    let mut a = vec![C64::new(0.0, 0.0); n];
    let mut b = a.clone();
    (a[n - 1], b[n - 1]) = (ONE, -ONE);
    if n >= 2 {
        (a[n - 2], b[n - 2]) = (ONE, ONE);
    }
    let x = SpinPoint::new(a, b).expect("shape").to_coords();
    checks.push(rank_check(ctx, "zero-G", &spin, &x, |r| r < 2 * n, &format!("< {}", 2 * n)));
    checks
}

fn zak_pairs() -> Vec<(&'static str, HoloFn1, HoloFn1)> {
    vec![
        ("F=2+t,G=-1", HoloFn1::polynomial(&[C64::new(2.0, 0.0), ONE]), HoloFn1::constant(-ONE)),
        ("F=t,G=0", HoloFn1::polynomial(&[C64::new(0.0, 0.0), ONE]), HoloFn1::constant(C64::new(0.0, 0.0))),
    ]
}

fn zak_spec(kappa: C64, n: usize, (_, f, g): (&str, HoloFn1, HoloFn1)) -> BracketSpec {
    BracketSpec::ZakC { kappa, n, f, g }
}

fn zakrzewski(ctx: &Ctx) -> Vec<Check> {
    let (k, n) = (ctx.kappa(), ctx.cfg.n);
    let epsilon = k.norm() / 2.0;
    let scheme = ctx.cfg.scheme();
    let mut checks = Vec::new();
    for (label, f, g) in zak_pairs() {
        checks.push(ctx.single(col(&format!("condition {label}"), format!("F F' + G (F - F' t) = t, {label}"), ZAK_CONDITION_TOL), |s| {
            let t = s.disk(ctx.radius);
            (vec![t], verify::zak_condition_residual(&f, &g, t))
        }));
        let complex = BracketSpec::ZakC { kappa: k, n, f: f.clone(), g: g.clone() };
        checks.push(ctx.single(col(&format!("jacobi complex {label}"), complex.summary(), ZAK_JACOBI_TOL), |s| {
            let x = s.coords(2 * n, ctx.radius);
            let r = verify::jacobi_residual(&complex, &x, scheme);
            (x, r)
        }));
        let real = BracketSpec::ZakR { epsilon, n, f, g };
        checks.push(ctx.single(col(&format!("jacobi real {label}"), real.summary(), ZAK_JACOBI_TOL), |s| {
            let u = s.coords(n, ctx.radius);
            let x: Vec<C64> = u.iter().copied().chain(u.iter().map(C64::conj)).collect();
            let r = verify::jacobi_residual(&real, &x, scheme);
            (x, r)
        }));
    }
    if n >= 2 {
        let bad = BracketSpec::ZakC { kappa: k, n, f: HoloFn1::constant(ONE), g: HoloFn1::constant(C64::new(0.0, 0.0)) };
        let spec = format!("Jacobi violated by {}, deficit below {ZAK_VIOLATION_BOUND:e}", bad.summary());
        checks.push(ctx.single(col("violation F=1,G=0", spec, 0.0), |s| {
            let x = s.coords(2 * n, ctx.radius);
            let r = verify::jacobi_residual(&bad, &x, scheme).map(|r| (ZAK_VIOLATION_BOUND - r).max(0.0));
            (x, r)
        }));
    }
    checks
}

fn actions(ctx: &Ctx) -> Vec<Check> {
    let (k, n, d) = (ctx.kappa(), ctx.cfg.n, ctx.cfg.d);
    let space = BracketSpec::S { kappa: k, n, d };
    let fd = ctx.cfg.tol_fd;
    let mut checks = Vec::new();
    for (name, l, act) in [
        ("GL(n)", n, maps::gl_n_action as fn(usize, usize, &[C64], &[C64]) -> Result<Vec<C64>>),
        ("GL(d)", d, maps::gl_d_action),
    ] {
        let group = BracketSpec::GlMult { kappa: k, l };
        let spec = format!("{name} action of {} on {}", group.summary(), space.summary());
        checks.push(ctx.single(col(name, spec, fd), |s| {
            let g = s.near_identity(l, ctx.radius).into_vec();
            let x = s.coords(2 * n * d, ctx.radius);
            let r = verify::action_residual(&group, &space, &|g, x| act(n, d, g, x), &g, &x, ctx.fd());
            (g.into_iter().chain(x).collect(), r)
        }));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite) -> RunConfig {
        RunConfig { suite, samples: 3, ..RunConfig::default() }
    }

    #[test]
    fn every_suite_passes_at_defaults() {
        for suite in Suite::EACH {
            let report = run(&cfg(suite));
            assert!(report.pass, "{suite}: {}", report.to_json());
            assert!(report.failures.is_empty());
        }
    }

    #[test]
    fn rank_suite_reports_the_degenerate_rank() {
        let report = run(&RunConfig { n: 3, d: 2, ..cfg(Suite::Rank) });
        let check = report.checks.iter().find(|c| c.name == "rank/degenerate").unwrap();
        assert_eq!(check.values["rank"], serde_json::json!(4));
    }

    #[test]
    fn tight_tolerance_fails_without_errors() {
        let report = run(&RunConfig { tol_fd: 1e-300, ..cfg(Suite::Actions) });
        assert!(!report.pass);
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn evaluation_errors_exit_3() {
        let report = run(&RunConfig { radius: Some(5.0), ..cfg(Suite::DecoupleM) });
        assert_eq!(report.exit_code(), 3);
        assert!(report.failures.iter().any(|f| f.error.is_some() && f.digest.len() == 16));
    }
}
