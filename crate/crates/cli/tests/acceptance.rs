//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use plie_cli::report::Check;
use plie_cli::sampling::Sampler;
use plie_cli::{run, RunConfig, RunReport, Suite};
use plie_core::brackets::{bivector_s, dual_bases, tensor_form, BracketSpec, HoloFn1};
use plie_core::tensor_kit::{r_pm, Sign};
use plie_core::verify::{jacobi_residual, DiffScheme};

const KAPPAS: [C64; 3] = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(2.0, -1.0)];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cfg(suite: Suite, n: usize, d: usize, samples: usize) -> RunConfig {
    RunConfig { suite, n, d, samples, seed: 20_240_601, ..RunConfig::default() }
}

fn checks<'a>(report: &'a RunReport, names: &'a [&str]) -> impl Iterator<Item = &'a Check> + 'a {
    report.checks.iter().filter(move |c| names.iter().any(|n| c.name.ends_with(n)))
}

/// Largest residual over the named checks, and whether every one of them
/// is present, error-free and below `bound`.
fn worst(report: &RunReport, names: &[&str], bound: f64) -> (bool, f64) {
    let mut max: f64 = 0.0;
    let mut ok = true;
    let mut seen = 0;
    for c in checks(report, names) {
        seen += 1;
        max = max.max(c.report.max_residual);
        ok &= c.report.max_residual < bound && !c.report.failures.iter().any(|f| f.error.is_some());
    }
    (ok && seen == names.len(), max)
}

fn jacobi() -> Outcome {
    let start = Instant::now();
    let mut max: f64 = 0.0;
    let mut ok = true;
    for kappa in KAPPAS {
        for (idx, (n, d)) in (1..=3).flat_map(|n| (1..=3).map(move |d| (n, d))).enumerate() {
            let l = idx % 4 + 1;
            let report = run(&RunConfig { kappa, l, ..cfg(Suite::Jacobi, n, d, 100) });
            for c in &report.checks {
                max = max.max(c.report.max_residual);
                ok &= c.report.max_residual < 1e-10 && c.report.samples == 100;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(ok && elapsed < Duration::from_secs(60), format!("max residual {max:.2e}, {:.1} s", elapsed.as_secs_f64()))
}

fn decoupling_sweep(suite: Suite, fd: &[&str], exact: &[&str]) -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for n in 2..=3 {
        for d in 2..=3 {
            let report = run(&RunConfig { radius: Some(0.3), fd_step: 1e-5, ..cfg(suite, n, d, 50) });
            let (ok_fd, max_fd) = worst(&report, fd, 1e-7);
            let (ok_ex, max_ex) = worst(&report, exact, 1e-10);
            ok &= ok_fd && ok_ex;
            detail.push(format!("({n},{d}) {max_fd:.1e}/{max_ex:.1e}"));
        }
    }
    outcome(ok, format!("pushforward/identity residuals {}", detail.join(" ")))
}

fn factorization() -> Outcome {
    let mut max: f64 = 0.0;
    let mut ok = true;
    for n in 1..=5 {
        for d in 1..=4 {
            let report = run(&RunConfig { radius: Some(0.3), ..cfg(Suite::Factorization, n, d, 100) });
            let (good, m) = worst(&report, &["factid1", "factid2"], 1e-12);
            ok &= good;
            max = max.max(m);
        }
    }
    outcome(ok, format!("max residual {max:.2e}"))
}

fn moments() -> Outcome {
    let (mut ok, mut ex, mut fd) = (true, 0.0f64, 0.0f64);
    for n in 1..=3 {
        for d in 1..=3 {
            let report = run(&cfg(Suite::Moment, n, d, 25));
            let (a, m1) = worst(&report, &["Ga1", "Ga2"], 1e-10);
            let (b, m2) = worst(&report, &["mom1-g", "mom1-Gamma", "Ga1-prime", "Ga2-prime"], 1e-6);
            ok &= a && b;
            ex = ex.max(m1);
            fd = fd.max(m2);
        }
    }
    outcome(ok, format!("exact {ex:.2e}, finite-difference {fd:.2e}"))
}

fn rank() -> Outcome {
    let mut ok = true;
    let mut seen = Vec::new();
    for n in 2..=5 {
        for d in 2..=5 {
            let report = run(&cfg(Suite::Rank, n, d, 1));
            let value = |name: &str| {
                report.checks.iter().find(|c| c.name == name).and_then(|c| c.values.get("rank")).and_then(|v| v.as_u64())
            };
            let (deg, origin) = (value("rank/degenerate"), value("rank/origin"));
            ok &= deg == Some((2 * (n - 1) * (d - 1)) as u64) && origin == Some((2 * n * d) as u64);
            seen.push(deg.map_or("?".to_string(), |r| r.to_string()));
        }
    }
    outcome(ok, format!("degenerate ranks {}", seen.join(",")))
}

fn symplectic() -> Outcome {
    let (mut ok, mut max) = (true, 0.0f64);
    for n in 1..=6 {
        let report = run(&RunConfig { radius: Some(0.3), ..cfg(Suite::Symplectic, n, 1, 100) });
        let (good, m) = worst(&report, &["inversion"], 1e-10);
        let zero_g = checks(&report, &["zero-G"]).all(|c| c.report.pass);
        ok &= good && zero_g;
        max = max.max(m);
    }
    outcome(ok, format!("max |Omega Pi - 1| {max:.2e}, ZeroG raised"))
}

fn zakrzewski() -> Outcome {
    let mut ok = true;
    let mut good = 0.0f64;
    let mut weakest = f64::MAX;
    for n in 2..=3 {
        let report = run(&cfg(Suite::Zakrzewski, n, 1, 10));
        let names = ["jacobi complex F=2+t,G=-1", "jacobi real F=2+t,G=-1", "jacobi complex F=t,G=0", "jacobi real F=t,G=0"];
        let (a, m) = worst(&report, &names, 1e-8);
        let violation = checks(&report, &["violation F=1,G=0"]).next();
        ok &= a && violation.is_some_and(|c| c.report.pass && c.report.samples == 10);
        good = good.max(m);
        let spec = BracketSpec::ZakC {
            kappa: C64::new(1.0, 0.0),
            n,
            f: HoloFn1::constant(C64::new(1.0, 0.0)),
            g: HoloFn1::constant(C64::new(0.0, 0.0)),
        };
        for i in 0..10 {
            let x = Sampler::new(7, "acceptance/zak", i).coords(2 * n, 1.0);
            let r = jacobi_residual(&spec, &x, DiffScheme::default()).unwrap_or(0.0);
            weakest = weakest.min(r);
        }
    }
    ok &= weakest > 1e-4;
    outcome(ok, format!("compatible max {good:.2e}, incompatible min {weakest:.2e}"))
}

fn covariance() -> Outcome {
    let (mut ok, mut max) = (true, 0.0f64);
    for (n, d) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
        let report = run(&RunConfig { radius: Some(0.3), ..cfg(Suite::Actions, n, d, 25) });
        let (good, m) = worst(&report, &["GL(n)", "GL(d)"], 1e-7);
        ok &= good;
        max = max.max(m);
    }
    outcome(ok, format!("max residual {max:.2e}"))
}

fn cross_oracle() -> Outcome {
    let mut max: f64 = 0.0;
    for (i, (n, d)) in [(1, 1), (2, 2), (3, 2), (2, 3), (3, 3)].iter().cycle().take(100).enumerate() {
        let p = Sampler::new(3, "acceptance/oracle", i).s_point(*n, *d, 1.0);
        let kappa = KAPPAS[i % 3];
        let a = bivector_s(kappa, &p).unwrap();
        let b = tensor_form::bivector_s(kappa, &p).unwrap();
        max = max.max(a.matrix().max_abs_diff(b.matrix()).unwrap());
    }
    let mut rid: f64 = 0.0;
    for l in 1..=4 {
        for kappa in KAPPAS {
            let db = dual_bases(l, kappa).unwrap();
            let rm = r_pm(l, Sign::Minus).unwrap().scale(-kappa);
            let rp = r_pm(l, Sign::Plus).unwrap().scale(-kappa);
            rid = rid
                .max(db.sum_xz().max_abs_diff(&rm).unwrap())
                .max(db.sum_xw().max_abs_diff(&rp).unwrap())
                .max(db.duality_defect().unwrap());
        }
    }
    outcome(max < 1e-13 && rid < 1e-13, format!("componentwise vs tensor {max:.2e}, dual bases {rid:.2e}"))
}

fn determinism() -> Outcome {
    let run_bin = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_plie"))
            .args(["verify", "--suite", "all", "--seed", "42", "--threads", threads])
            .env_remove("PLIE_SEED")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run_bin("1"), run_bin("4"));
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(same && a.status.code() == Some(0), format!("{} bytes, exit {:?}", a.stdout.len(), a.status.code()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("jacobi identity for all quadratic brackets", jacobi),
        ("decoupling map m is Poisson", || decoupling_sweep(Suite::DecoupleM, &["poisson-m"], &["round-trip-m"])),
        ("map F and theta o F are Poisson", || {
            decoupling_sweep(Suite::DecoupleF, &["poisson-F", "poisson-theta-F"], &["round-trip-F", "ao-res"])
        }),
        ("factorization identities", factorization),
        ("moment map relations", moments),
        ("bivector rank at the origin and the degenerate point", rank),
        ("symplectic inversion", symplectic),
        ("Zakrzewski dichotomy", zakrzewski),
        ("covariance under GL(n) and GL(d)", covariance),
        ("componentwise and tensor evaluations agree", cross_oracle),
        ("byte-identical reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!("{} criterion {:2}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
