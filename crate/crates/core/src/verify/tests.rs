use super::*;
use crate::brackets::HoloFn1;
use crate::decoupling::{SPoint, SpinTuple};
use crate::factorization::{DualPair, SpinPoint};
use crate::tensor_kit::ONE;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

struct Lcg(u64);

impl Lcg {
    fn unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    fn point(&mut self, dim: usize, radius: f64) -> Vec<C64> {
        (0..dim).map(|_| c(self.unit(), self.unit()) * (radius / 2f64.sqrt())).collect()
    }
}

fn near_identity(rng: &mut Lcg, l: usize, radius: f64) -> Vec<C64> {
    let mut g = rng.point(l * l, radius);
    for i in 0..l {
        g[i * l + i] += ONE;
    }
    g
}

fn exact_scheme() -> DiffScheme {
    DiffScheme::default()
}

const KAPPAS: [C64; 3] = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(2.0, -1.0)];

#[test]
fn jacobi_holds_for_quadratic_brackets() {
    let mut rng = Lcg(11);
    for kappa in KAPPAS {
        for n in 1..=3 {
            for d in 1..=3 {
                for spec in [
                    BracketSpec::S { kappa, n, d },
                    BracketSpec::AoPlus { kappa, n, d },
                    BracketSpec::AoMinus { kappa, n, d },
                    BracketSpec::Prime { kappa, n, d },
                    BracketSpec::S1Product { kappa, n, d },
                ] {
                    let x = rng.point(2 * n * d, 1.0);
                    let r = jacobi_residual(&spec, &x, exact_scheme()).unwrap();
                    assert!(r < 1e-10, "{} residual {r}", spec.summary());
                }
            }
        }
        for l in 1..=3 {
            for spec in [
                BracketSpec::GlMult { kappa, l },
                BracketSpec::Sts { kappa, l },
                BracketSpec::Double { kappa, l },
            ] {
                let x = rng.point(spec.chart().dim(), 1.0);
                let r = jacobi_residual(&spec, &x, exact_scheme()).unwrap();
                assert!(r < 1e-10, "{} residual {r}", spec.summary());
            }
            let x = rng.point(l * l, 0.5);
            let mut x = x;
            let diag = l * (l - 1) / 2;
            for v in &mut x[diag..diag + l] {
                *v += ONE;
            }
            let spec = BracketSpec::DualGroup { kappa, l };
            let r = jacobi_residual(&spec, &x, exact_scheme()).unwrap();
            assert!(r < 1e-10, "dual group l={l} residual {r}");
        }
    }
}

#[test]
fn zakrzewski_dichotomy() {
    let mut rng = Lcg(5);
    let kappa = c(0.7, 0.2);
    let good = [
        (HoloFn1::polynomial(&[c(2.0, 0.0), ONE]), HoloFn1::constant(c(-1.0, 0.0))),
        (HoloFn1::polynomial(&[ZERO, ONE]), HoloFn1::constant(ZERO)),
    ];
    for n in 2..=3 {
        for (f, g) in &good {
            let spec = BracketSpec::ZakC { kappa, n, f: f.clone(), g: g.clone() };
            let x = rng.point(2 * n, 0.8);
            assert!(jacobi_residual(&spec, &x, exact_scheme()).unwrap() < 1e-8);
            let spec = BracketSpec::ZakR { epsilon: 0.6, n, f: f.clone(), g: g.clone() };
            assert!(jacobi_residual(&spec, &x, exact_scheme()).unwrap() < 1e-8);
        }
        let spec = BracketSpec::ZakC { kappa, n, f: HoloFn1::constant(ONE), g: HoloFn1::constant(ZERO) };
        let x = rng.point(2 * n, 0.8);
        assert!(jacobi_residual(&spec, &x, exact_scheme()).unwrap() > 1e-3);
    }
    let spec = BracketSpec::ZakC { kappa, n: 1, f: HoloFn1::constant(ONE), g: HoloFn1::constant(ZERO) };
    assert!(jacobi_residual(&spec, &[c(0.3, 0.1), c(-0.2, 0.4)], exact_scheme()).unwrap() < 1e-12);
}

#[test]
fn zak_condition_examples() {
    let f = HoloFn1::polynomial(&[c(2.0, 0.0), ONE]);
    let g = HoloFn1::constant(c(-1.0, 0.0));
    assert!(zak_condition_residual(&f, &g, c(0.7, 0.0)).unwrap() < 1e-15);
    let f = HoloFn1::polynomial(&[ZERO, ONE]);
    let g = HoloFn1::constant(ZERO);
    assert!(zak_condition_residual(&f, &g, c(-1.3, 2.0)).unwrap() < 1e-15);
    let f = HoloFn1::constant(ONE);
    assert!((zak_condition_residual(&f, &g, c(0.5, 0.0)).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn decoupling_maps_are_poisson() {
    let mut rng = Lcg(21);
    let kappa = c(0.8, 0.3);
    let fd = Diff::Scheme(exact_scheme());
    for (n, d) in [(2, 2), (2, 3), (3, 2)] {
        let src = BracketSpec::S1Product { kappa, n, d };
        let x = rng.point(2 * n * d, 0.3);
        let r = poisson_map_residual(&src, &BracketSpec::S { kappa, n, d }, &|y| maps::m(n, d, y), &x, fd).unwrap();
        assert!(r < 1e-7, "m residual {r}");
        let r = poisson_map_residual(&src, &BracketSpec::Prime { kappa, n, d }, &|y| maps::f(n, d, y), &x, fd).unwrap();
        assert!(r < 1e-7, "F residual {r}");
        let t = (c(0.5, 0.5), -ONE / (kappa * c(0.5, 0.5)));
        let r = poisson_map_residual(
            &src,
            &BracketSpec::AoPlus { kappa, n, d },
            &|y| maps::theta_f(n, d, t, kappa, y),
            &x,
            fd,
        )
        .unwrap();
        assert!(r < 1e-7, "theta F residual {r}");
    }
}

#[test]
fn linear_maps_are_poisson() {
    let mut rng = Lcg(8);
    for kappa in KAPPAS {
        let (n, d) = (2, 3);
        let x = rng.point(2 * n * d, 1.0);
        let s = |kappa| BracketSpec::S { kappa, n, d };
        let pair = (c(1.5, 0.0), -ONE / (kappa * 1.5));
        let r = poisson_map_residual(
            &s(kappa),
            &BracketSpec::AoPlus { kappa: -kappa, n, d },
            &|y| maps::xi(n, d, pair, kappa, y),
            &x,
            Diff::Exact,
        )
        .unwrap();
        assert!(r < 1e-10, "xi residual {r}");
        let r = poisson_map_residual(
            &BracketSpec::Prime { kappa, n, d },
            &BracketSpec::AoPlus { kappa, n, d },
            &|y| maps::theta(n, d, pair, kappa, y),
            &x,
            Diff::Exact,
        )
        .unwrap();
        assert!(r < 1e-10, "theta residual {r}");
        let r = poisson_map_residual(
            &s(kappa),
            &BracketSpec::S { kappa: -kappa, n: d, d: n },
            &|y| maps::nu(n, d, y),
            &x,
            Diff::Exact,
        )
        .unwrap();
        assert!(r < 1e-10, "nu residual {r}");
    }
}

#[test]
fn scaling_is_not_poisson() {
    let kappa = ONE;
    let (n, d) = (2, 2);
    let x = Lcg(3).point(8, 0.5);
    let spec = BracketSpec::S { kappa, n, d };
    let double_a = |y: &[C64]| -> Result<Vec<C64>> {
        Ok(y.iter().enumerate().map(|(i, &v)| if i < n * d { v * 2.0 } else { v }).collect())
    };
    assert!(poisson_map_residual(&spec, &spec, &double_a, &x, Diff::Exact).unwrap() > 0.5);
}

#[test]
fn moment_maps_are_poisson() {
    let mut rng = Lcg(31);
    let kappa = c(1.1, -0.4);
    let fd = Diff::Scheme(exact_scheme());
    for n in 1..=3 {
        let x = rng.point(2 * n, 0.3);
        let r = poisson_map_residual(
            &BracketSpec::S { kappa, n, d: 1 },
            &BracketSpec::DualGroup { kappa, l: n },
            &|y| maps::g_pm(n, y),
            &x,
            fd,
        )
        .unwrap();
        assert!(r < 1e-7, "g_pm residual {r}");
    }
    for (n, d) in [(2, 2), (3, 2), (2, 3)] {
        let x = rng.point(2 * n * d, 0.3);
        let r = poisson_map_residual(
            &BracketSpec::S1Product { kappa, n, d },
            &BracketSpec::DualGroup { kappa, l: n },
            &|y| maps::calg_pm(n, d, y),
            &x,
            fd,
        )
        .unwrap();
        assert!(r < 1e-7, "calG residual {r}");
        let r = poisson_map_residual(
            &BracketSpec::S { kappa, n, d },
            &BracketSpec::Sts { kappa, l: n },
            &|y| maps::gamma(n, d, y),
            &x,
            Diff::Exact,
        )
        .unwrap();
        assert!(r < 1e-10, "Gamma residual {r}");
    }
    for l in 1..=3 {
        let mut x = rng.point(l * l, 0.3);
        let diag = l * (l - 1) / 2;
        for v in &mut x[diag..diag + l] {
            *v += ONE;
        }
        let r = poisson_map_residual(
            &BracketSpec::DualGroup { kappa, l },
            &BracketSpec::Sts { kappa, l },
            &|y| maps::chi(l, y),
            &x,
            fd,
        )
        .unwrap();
        assert!(r < 1e-7, "chi residual {r}");
    }
}

#[test]
fn iota_is_anti_poisson() {
    let mut rng = Lcg(4);
    let kappa = c(0.4, 0.9);
    let (n, d) = (3, 2);
    let spec = BracketSpec::S1Product { kappa, n, d };
    let x = rng.point(2 * n * d, 0.5);
    assert!(anti_poisson_residual(&spec, &|y| maps::iota(n, d, y), &x, Diff::Exact).unwrap() < 1e-10);

    let identity = |y: &[C64]| -> Result<Vec<C64>> { Ok(y.to_vec()) };
    let r = anti_poisson_residual(&spec, &identity, &x, Diff::Exact).unwrap();
    let norm = spec.evaluate(&x).unwrap().matrix().max_abs();
    assert!((r - 2.0 * norm).abs() < 1e-12);

    let zak = BracketSpec::ZakC {
        kappa,
        n,
        f: HoloFn1::polynomial(&[c(2.0, 0.0), ONE]),
        g: HoloFn1::constant(c(-1.0, 0.0)),
    };
    let x = rng.point(2 * n, 0.5);
    assert!(anti_poisson_residual(&zak, &|y| maps::iota(n, 1, y), &x, Diff::Exact).unwrap() < 1e-10);
}

#[test]
fn actions_are_poisson() {
    let mut rng = Lcg(17);
    let kappa = c(0.9, 0.2);
    let fd = Diff::Scheme(exact_scheme());
    let (n, d) = (3, 2);
    let space = BracketSpec::S { kappa, n, d };
    for _ in 0..3 {
        let x = rng.point(2 * n * d, 0.3);
        let g = near_identity(&mut rng, n, 0.3);
        let r = action_residual(&BracketSpec::GlMult { kappa, l: n }, &space, &|g, x| {
            maps::gl_n_action(n, d, g, x)
        }, &g, &x, fd)
        .unwrap();
        assert!(r < 1e-7, "GL(n) residual {r}");
        let g = near_identity(&mut rng, d, 0.3);
        let r = action_residual(&BracketSpec::GlMult { kappa, l: d }, &space, &|g, x| {
            maps::gl_d_action(n, d, g, x)
        }, &g, &x, fd)
        .unwrap();
        assert!(r < 1e-7, "GL(d) residual {r}");
    }
    let x = rng.point(2 * n * d, 0.3);
    let id = near_identity(&mut Lcg(0), n, 0.0);
    let r = action_residual(&BracketSpec::GlMult { kappa, l: n }, &space, &|g, x| {
        maps::gl_n_action(n, d, g, x)
    }, &id, &x, fd)
    .unwrap();
    assert!(r < 1e-9);
}

#[test]
fn bracket_with_functions() {
    let kappa = c(1.2, 0.5);
    let (n, d) = (2, 3);
    let spec = BracketSpec::S { kappa, n, d };
    let x = Lcg(9).point(2 * n * d, 0.7);
    let pi = spec.evaluate(&x).unwrap();
    let constant = |_: &[C64]| -> Result<C64> { Ok(c(3.0, 1.0)) };
    assert_eq!(bracket_coord_fn(&spec, &x, 4, &constant, Diff::Exact).unwrap(), ZERO);
    let coord = |y: &[C64]| -> Result<C64> { Ok(y[7]) };
    assert!((bracket_coord_fn(&spec, &x, 4, &coord, Diff::Exact).unwrap() - pi.get(4, 7)).norm() < 1e-14);

    let (j, k) = (1, 0);
    let gamma_jk = |y: &[C64]| -> Result<C64> {
        let p = SPoint::from_coords(n, d, y)?;
        Ok((p.a() * p.b())[(j, k)])
    };
    let a_index = |i: usize, beta: usize| i * d + beta;
    let b_index = |beta: usize, k: usize| n * d + beta * n + k;
    for p in 0..2 * n * d {
        let mut leibniz = ZERO;
        for beta in 0..d {
            leibniz += pi.get(p, a_index(j, beta)) * x[b_index(beta, k)] + x[a_index(j, beta)] * pi.get(p, b_index(beta, k));
        }
        let direct = bracket_coord_fn(&spec, &x, p, &gamma_jk, Diff::Exact).unwrap();
        assert!((direct - leibniz).norm() < 1e-13);
    }
}

#[test]
fn moment_relations() {
    let mut rng = Lcg(41);
    let kappa = c(0.6, 0.7);
    let zero = moment_residuals(kappa, &SPoint::zeros(2, 2), exact_scheme()).unwrap();
    assert!(zero.ga1 < 1e-12);
    for (n, d) in [(2, 2), (3, 2), (1, 3)] {
        let p = SPoint::from_coords(n, d, &rng.point(2 * n * d, 0.3)).unwrap();
        let r = moment_residuals(kappa, &p, exact_scheme()).unwrap();
        assert!(r.ga1 < 1e-10 && r.ga2 < 1e-10, "{r:?}");
        assert!(r.ga1_prime < 1e-10 && r.ga2_prime < 1e-10, "{r:?}");
        assert!(r.mom1_g < 1e-7 && r.mom1_gamma < 1e-7, "{r:?}");
    }
}

#[test]
fn lemma4_relations() {
    let kappa = c(0.9, -0.3);
    let zero = lemma4_residuals(kappa, &SpinTuple::zeros(2, 3), exact_scheme()).unwrap();
    assert!(zero.max() < 1e-12);
    let mut rng = Lcg(51);
    for (n, d) in [(2, 3), (3, 2)] {
        let t = SpinTuple::from_coords(n, d, &rng.point(2 * n * d, 0.3)).unwrap();
        let r = lemma4_residuals(kappa, &t, exact_scheme()).unwrap();
        assert!(r.max() < 1e-6, "{r:?}");
    }
}

#[test]
fn factorization_identities() {
    let mut rng = Lcg(61);
    let kappa = c(1.3, 0.4);
    for (n, d) in [(2, 2), (3, 4), (5, 3)] {
        let t = SpinTuple::from_coords(n, d, &rng.point(2 * n * d, 0.3)).unwrap();
        let theta = (c(0.7, 0.1), -ONE / (kappa * c(0.7, 0.1)));
        let r = identity_residuals(kappa, theta, &t).unwrap();
        assert!(r.max() < 1e-10, "{r:?}");
        assert!(r.factid1 < 1e-12 && r.factid2 < 1e-12, "{r:?}");
    }
}

#[test]
fn rank_examples() {
    for n in 2..=5 {
        for d in 2..=5 {
            let spec = BracketSpec::S { kappa: ONE, n, d };
            assert_eq!(rank_at(&spec, &vec![ZERO; 2 * n * d], 1e-8).unwrap(), 2 * n * d);
            let mut a = CMat::zeros(n, d);
            let mut b = CMat::zeros(d, n);
            a[(n - 1, 0)] = ONE;
            b[(0, n - 1)] = -ONE;
            let x = SPoint::new(a, b).unwrap().to_coords();
            assert_eq!(rank_at(&spec, &x, 1e-8).unwrap(), 2 * (n - 1) * (d - 1), "n={n} d={d}");
        }
    }
    let n = 3;
    let p = SpinPoint::new(vec![ZERO, ONE, ZERO], vec![ZERO, -ONE, ZERO]).unwrap();
    let spec = BracketSpec::S { kappa: ONE, n, d: 1 };
    assert!(rank_at(&spec, &p.to_coords(), 1e-8).unwrap() < 2 * n);
}

#[test]
fn symplectic_examples() {
    let kappa = c(2.0, 0.0);
    let p = SpinPoint::new(vec![ONE], vec![ONE]).unwrap();
    let omega = symplectic_matrix(kappa, &p).unwrap();
    assert!((omega[(0, 1)] - c(-0.25, 0.0)).norm() < 1e-15);
    assert!((omega[(1, 0)] - c(0.25, 0.0)).norm() < 1e-15);
    assert!(symplectic_inversion_residual(kappa, &p).unwrap() < 1e-14);

    let kappa = c(0.3, 1.1);
    let zero = SpinPoint::zeros(4);
    let omega = symplectic_matrix(kappa, &zero).unwrap();
    for p in 0..8 {
        for q in 0..8 {
            let expected = if q == p + 4 {
                -ONE / kappa
            } else if p == q + 4 {
                ONE / kappa
            } else {
                ZERO
            };
            assert!((omega[(p, q)] - expected).norm() < 1e-15);
        }
    }
    assert!(symplectic_inversion_residual(kappa, &zero).unwrap() < 1e-14);

    let mut rng = Lcg(71);
    for n in 1..=6 {
        let x = rng.point(2 * n, 0.3);
        let p = SpinPoint::from_coords(n, &x).unwrap();
        assert!(symplectic_inversion_residual(kappa, &p).unwrap() < 1e-10);
    }

    let p = SpinPoint::new(vec![ZERO, ONE, ZERO], vec![ZERO, -ONE, ZERO]).unwrap();
    assert!(matches!(symplectic_matrix(kappa, &p), Err(Error::ZeroG(_))));
}

#[test]
fn differentiation_schemes() {
    assert!(DiffScheme::new(1e-12, true, Direction::RealAxis).is_err());
    assert!(DiffScheme::new(0.1, true, Direction::RealAxis).is_err());
    let imag = DiffScheme::new(1e-4, true, Direction::ImagAxis).unwrap();
    let f = |y: &[C64]| -> Result<Vec<C64>> { Ok(vec![y[0].exp() * y[1]]) };
    let x = [c(0.2, 0.1), c(-0.3, 0.5)];
    let d0 = partial(&f, &x, 0, Diff::Scheme(imag)).unwrap()[0];
    assert!((d0 - x[0].exp() * x[1]).norm() < 1e-10);
    let guarded = |y: &[C64]| -> Result<Vec<C64>> {
        if y[0].re > 0.0 {
            Err(Error::BranchCut(0))
        } else {
            Ok(vec![y[0]])
        }
    };
    assert!(matches!(
        partial(&guarded, &[ZERO], 0, Diff::Scheme(DiffScheme::default())),
        Err(Error::DomainEscape(_))
    ));
}

#[test]
fn dual_pair_free_coordinates_round_trip() {
    let mut rng = Lcg(2);
    let mut x = rng.point(4, 0.3);
    for v in &mut x[1..3] {
        *v += ONE;
    }
    let pair = DualPair::from_free_coords(2, &x).unwrap();
    assert_eq!(pair.to_free_coords(), x);
}

#[test]
fn report_serializes() {
    let samples = vec![
        Sample { residual: Ok(1e-12), digest: "a".into() },
        Sample { residual: Ok(1e-3), digest: "b".into() },
        Sample { residual: Err("escape".into()), digest: "c".into() },
    ];
    let report = VerificationReport::from_samples("jacobi", "S(1,2,2)", 7, 1e-10, samples);
    assert!(!report.pass);
    assert_eq!(report.failures.len(), 2);
    assert!(report.has_errors());
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.contains("\"suite\":\"jacobi\""));
}
