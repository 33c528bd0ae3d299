use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn hp(a: Complex64, b: Complex64, g: Complex64) -> HypParams {
    HypParams::new(a, b, g).unwrap()
}

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

/// `-ln(1-t)/t`, which is `F(1, 1; 2; t)`.
fn log_ratio(t: f64) -> f64 {
    -(1.0 - t).ln() / t
}

#[test]
fn raw_series_examples() {
    let p = hp(c(0.3, 1.0), c(-1.2, 0.4), c(2.5, -0.5));
    assert_eq!(raw_series(&p, r(0.0), &ctrl()).unwrap(), r(1.0));

    // 1 - 2w + w^2 at w = 0.3
    let p = hp(r(-2.0), r(1.0), r(1.0));
    let v = raw_series(&p, r(0.3), &ctrl()).unwrap();
    assert!(rel(v, r(0.49)) < 1e-15);

    let p = hp(r(1.0), r(1.0), r(2.0));
    let v = raw_series(&p, r(0.5), &ctrl()).unwrap();
    assert!(rel(v, r(1.386_294_361_119_890_6)) < 1e-15);
    // independent partial sums of sum w^n/(n+1)
    let partial: f64 = (0..200).map(|n| 0.5f64.powi(n) / (n as f64 + 1.0)).sum();
    assert!((v.re - partial).abs() < 1e-15);
}

#[test]
fn raw_series_errors() {
    let p = hp(c(0.3, 0.1), r(1.5), r(2.5));
    let tight = SeriesControl::new(1e-15, 5, 0.7).unwrap();
    assert!(matches!(
        raw_series(&p, r(0.6), &tight),
        Err(Error::NoConvergence { max_terms: 5, .. })
    ));
    assert!(matches!(
        raw_series(&p, c(0.0, 1.2), &ctrl()),
        Err(Error::OutsideUnitDisk { .. })
    ));
    // a terminating series is fine anywhere
    let p = hp(r(-3.0), c(0.5, 0.5), r(1.5));
    assert!(raw_series(&p, r(40.0), &ctrl()).is_ok());
}

#[test]
fn control_validation() {
    assert!(SeriesControl::new(0.0, 10, 0.5).is_err());
    assert!(SeriesControl::new(1e-12, 0, 0.5).is_err());
    assert!(SeriesControl::new(1e-12, 10, 1.0).is_err());
    assert!(SeriesControl::new(1e-12, 10, 0.0).is_err());
    assert!(SeriesControl::new(1e-12, 10, 0.5).is_ok());
}

#[test]
fn gamma_validity_and_polynomial_escape() {
    assert!(matches!(
        HypParams::new(r(0.5), r(1.5), r(-2.0)),
        Err(Error::InvalidGamma { .. })
    ));
    assert!(HypParams::new(r(0.5), r(1.5), r(0.0)).is_err());
    // within tolerance of an integer still counts
    assert!(HypParams::new(r(0.5), r(1.5), r(-1.0 + 1e-12)).is_err());
    // alpha = -1 truncates before (gamma)_n hits zero at n = 3
    assert!(HypParams::new(r(-1.0), r(1.5), r(-2.0)).is_ok());
    assert!(HypParams::new(r(1.5), r(-2.0), r(-2.0)).is_ok());
    // alpha = -3 does not
    assert!(HypParams::new(r(-3.0), r(1.5), r(-2.0)).is_err());
    // the 0/0 case gamma = 0 with beta = 0
    let p = HypParams::new(r(1.0), r(0.0), r(0.0)).unwrap();
    assert_eq!(gauss_2f1(&p, c(0.8, -0.6), &ctrl()).unwrap(), r(1.0));
    assert_eq!(
        gauss_2f1_derivative(&p, c(0.8, -0.6), &ctrl()).unwrap(),
        r(0.0)
    );
    assert_eq!(
        gauss_2f1_second_derivative(&p, c(0.8, -0.6), &ctrl()).unwrap(),
        r(0.0)
    );
}

#[test]
fn strategy_examples() {
    let p = hp(c(0.3, 0.2), c(-0.7, 0.1), c(1.4, -0.3));
    assert_eq!(
        select_strategy(&p, r(0.1), &ctrl()),
        EvalStrategy::DirectSeries
    );
    // |t/(t-1)| = 0.9 and |1-t| = 10: nothing applies
    assert_eq!(
        select_strategy(&p, r(-9.0), &ctrl()),
        EvalStrategy::Unreachable
    );
    assert_eq!(
        select_strategy(&p, r(-2.0), &ctrl()),
        EvalStrategy::PfaffOnAlpha
    );
    assert_eq!(
        select_strategy(&p, c(0.9, 0.3), &ctrl()),
        EvalStrategy::OneMinusTConnection
    );
    let poly = hp(r(-3.0), c(0.2, 0.1), c(1.1, 0.0));
    for t in [r(0.1), r(-9.0), c(5.0, 5.0)] {
        assert_eq!(
            select_strategy(&poly, t, &ctrl()),
            EvalStrategy::PolynomialTruncation
        );
    }
    // gamma - alpha - beta integer: no connection formula
    let log_case = hp(r(1.0), r(1.0), r(2.0));
    assert_eq!(
        select_strategy(&log_case, c(0.9, 0.3), &ctrl()),
        EvalStrategy::Unreachable
    );
    // gamma = alpha: Pfaff on beta terminates on the whole plane
    let p = hp(r(2.0), r(1.0), r(2.0));
    assert_eq!(
        select_strategy(&p, c(0.8, -0.6), &ctrl()),
        EvalStrategy::PfaffOnBeta
    );
    let p = hp(r(1.0), r(2.0), r(2.0));
    assert_eq!(
        select_strategy(&p, c(0.8, -0.6), &ctrl()),
        EvalStrategy::PfaffOnAlpha
    );
}

#[test]
fn gauss_examples() {
    let p = hp(c(0.3, 0.2), c(-0.7, 0.1), c(1.4, -0.3));
    assert_eq!(gauss_2f1(&p, r(0.0), &ctrl()).unwrap(), r(1.0));
    let v = gauss_2f1(&hp(r(2.0), r(1.0), r(2.0)), r(0.5), &ctrl()).unwrap();
    assert!(rel(v, r(2.0)) < 1e-15);
    let v = gauss_2f1(&hp(r(1.0), r(1.0), r(2.0)), r(0.5), &ctrl()).unwrap();
    assert!(rel(v, r(1.386_294_361_119_890_6)) < 1e-15);
}

#[test]
fn matches_reference_values_in_every_region() {
    // reference values from a 30-digit evaluation (mpmath.hyp2f1)
    let p = hp(c(0.3, 0.2), c(-0.7, 0.1), c(1.4, -0.3));
    let cases = [
        (
            c(0.2, 0.65),
            c(1.047_026_433_740_959_2, -0.108_198_937_044_810_4),
            EvalStrategy::DirectSeries,
        ),
        (
            c(-2.0, 0.5),
            c(1.304_843_192_454_072, 0.117_603_692_834_003_28),
            EvalStrategy::PfaffOnAlpha,
        ),
        (
            c(0.9, 0.3),
            c(0.915_749_105_150_273_9, -0.154_842_013_794_442_18),
            EvalStrategy::OneMinusTConnection,
        ),
        (
            c(1.2, -0.4),
            c(0.747_568_337_886_738_8, -0.089_686_629_562_739_99),
            EvalStrategy::OneMinusTConnection,
        ),
    ];
    for (t, expected, strategy) in cases {
        assert_eq!(select_strategy(&p, t, &ctrl()), strategy, "t = {t}");
        let v = gauss_2f1(&p, t, &ctrl()).unwrap();
        assert!(rel(v, expected) < 1e-13, "t = {t}: {v} vs {expected}");
    }
    let d = gauss_2f1_derivative(&p, c(0.9, 0.3), &ctrl()).unwrap();
    assert!(rel(d, c(-0.121_784_533_378_185_3, -0.145_771_361_267_997_44)) < 1e-12);
}

#[test]
fn routes_agree_where_regions_overlap() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut draws = 0;
    while draws < 100 {
        let a = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let b = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let g = c(rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0));
        let Ok(p) = HypParams::new(a, b, g) else {
            continue;
        };
        if p.truncation_degree().is_some() || near_integer(g - a - b) {
            continue;
        }
        draws += 1;
        // |t| = 0.45, |t/(t-1)| < 0.45
        let t = Complex64::from_polar(0.45, rng.gen_range(2.0..4.28));
        let direct = eval_with_strategy(&p, t, EvalStrategy::DirectSeries, &ctrl()).unwrap();
        for s in [EvalStrategy::PfaffOnAlpha, EvalStrategy::PfaffOnBeta] {
            let v = eval_with_strategy(&p, t, s, &ctrl()).unwrap();
            assert!(rel(v, direct) < 1e-12, "{s:?} at {t}: {v} vs {direct}");
        }
        // |t| and |1-t| both below 0.6
        let t = c(0.5, rng.gen_range(-0.3..0.3));
        let direct = eval_with_strategy(&p, t, EvalStrategy::DirectSeries, &ctrl()).unwrap();
        let conn = eval_with_strategy(&p, t, EvalStrategy::OneMinusTConnection, &ctrl()).unwrap();
        let scale = direct.norm().max(1.0);
        assert!(
            (conn - direct).norm() < 1e-11 * scale,
            "connection at {t}: {conn} vs {direct}"
        );
    }
}

#[test]
fn branch_cut_and_unreachable_errors() {
    let p = hp(c(0.3, 0.2), c(-0.7, 0.1), c(1.4, -0.3));
    assert!(matches!(
        gauss_2f1(&p, r(1.5), &ctrl()),
        Err(Error::OnBranchCut { .. })
    ));
    assert!(matches!(
        gauss_2f1(&p, r(1.0), &ctrl()),
        Err(Error::OnBranchCut { .. })
    ));
    match gauss_2f1(&p, r(-9.0), &ctrl()) {
        Err(Error::EvaluationUnreachable {
            t,
            direct,
            pfaff,
            one_minus,
        }) => {
            assert_eq!(t, r(-9.0));
            assert!((direct - 9.0).abs() < 1e-15);
            assert!((pfaff - 0.9).abs() < 1e-15);
            assert!((one_minus - 10.0).abs() < 1e-15);
        }
        other => panic!("expected EvaluationUnreachable, got {other:?}"),
    }
    // near e^{i pi/3} every modulus is about 1
    let t = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
    assert!(matches!(
        gauss_2f1(&p, t, &ctrl()),
        Err(Error::EvaluationUnreachable { .. })
    ));
    // polynomials have no cut
    let poly = hp(r(-2.0), r(1.0), r(1.0));
    let v = gauss_2f1(&poly, r(3.0), &ctrl()).unwrap();
    assert!(rel(v, r(4.0)) < 1e-15);
}

#[test]
fn derivative_examples() {
    let p = hp(c(0.3, 0.2), c(-0.7, 0.1), c(1.4, -0.3));
    let d0 = gauss_2f1_derivative(&p, r(0.0), &ctrl()).unwrap();
    assert!(rel(d0, p.alpha() * p.beta() / p.gamma()) < 1e-15);
    let a2 = p.alpha() * (p.alpha() + 1.0);
    let b2 = p.beta() * (p.beta() + 1.0);
    let g2 = p.gamma() * (p.gamma() + 1.0);
    let dd0 = gauss_2f1_second_derivative(&p, r(0.0), &ctrl()).unwrap();
    assert!(rel(dd0, a2 * b2 / g2) < 1e-15);

    // d/dt and d2/dt2 of -ln(1-t)/t, differentiated by hand
    let t: f64 = 0.5;
    let n0 = -(1.0 - t).ln();
    let n1 = 1.0 / (1.0 - t);
    let n2 = 1.0 / ((1.0 - t) * (1.0 - t));
    let first = n1 / t - n0 / (t * t);
    let second = n2 / t - 2.0 * n1 / (t * t) + 2.0 * n0 / (t * t * t);
    assert!((first - 1.227_411_277_760_218_8).abs() < 1e-15);
    let p = hp(r(1.0), r(1.0), r(2.0));
    let d = gauss_2f1_derivative(&p, r(t), &ctrl()).unwrap();
    let dd = gauss_2f1_second_derivative(&p, r(t), &ctrl()).unwrap();
    assert!(rel(d, r(first)) < 1e-14);
    assert!(rel(dd, r(second)) < 1e-14);
    assert!(((log_ratio(t + 1e-5) - log_ratio(t - 1e-5)) / 2e-5 - first).abs() < 1e-8);
}

#[test]
fn derivatives_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut n = 0;
    while n < 20 {
        let a = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let b = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let g = c(rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0));
        let Ok(p) = HypParams::new(a, b, g) else {
            continue;
        };
        let t = Complex64::from_polar(rng.gen_range(0.0..0.6), rng.gen_range(-PI..PI));
        let f = |x: Complex64| gauss_2f1(&p, x, &ctrl()).unwrap();

        let h = 1e-6;
        let fd1 = (f(t + h) - f(t - h)) / (2.0 * h);
        let d = gauss_2f1_derivative(&p, t, &ctrl()).unwrap();
        assert!(rel(fd1, d) < 1e-6, "first derivative at {t}: {fd1} vs {d}");

        let h = 1e-4;
        let fd2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        let dd = gauss_2f1_second_derivative(&p, t, &ctrl()).unwrap();
        assert!(
            rel(fd2, dd) < 1e-5,
            "second derivative at {t}: {fd2} vs {dd}"
        );
        n += 1;
    }
}

#[test]
fn terminating_series_matches_horner() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 0..=5u32 {
        for _ in 0..20 {
            let b = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let g = c(rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0));
            let t = c(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
            let a = -(n as f64);
            // coefficients by explicit Pochhammer products
            let coeffs: Vec<Complex64> = (0..=n)
                .map(|k| {
                    (0..k).fold(r(1.0), |acc, j| {
                        let j = j as f64;
                        acc * (a + j) * (b + j) / ((g + j) * (j + 1.0))
                    })
                })
                .collect();
            let horner = coeffs.iter().rev().fold(r(0.0), |acc, &ck| acc * t + ck);
            let v = gauss_2f1(&hp(r(a), b, g), t, &ctrl()).unwrap();
            assert!(rel(v, horner) < 1e-14, "n = {n}: {v} vs {horner}");
        }
    }
}

fn param() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| c(re, im))
}

fn lower_param() -> impl Strategy<Value = Complex64> {
    (0.5..3.0f64, -2.0..2.0f64).prop_map(|(re, im)| c(re, im))
}

fn disk_point(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, -PI..PI).prop_map(|(m, th)| Complex64::from_polar(m, th))
}

proptest! {
    #[test]
    fn symmetric_in_upper_parameters(a in param(), b in param(), g in lower_param(), t in disk_point(0.6)) {
        let p = hp(a, b, g);
        let lhs = gauss_2f1(&p, t, &ctrl()).unwrap();
        let rhs = gauss_2f1(&p.swapped(), t, &ctrl()).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-13);
    }

    #[test]
    fn euler_transformation(a in param(), b in param(), g in lower_param(), t in disk_point(0.6)) {
        let lhs = gauss_2f1(&hp(a, b, g), t, &ctrl()).unwrap();
        let q = hp(g - a, g - b, g);
        let rhs = principal_power(r(1.0) - t, g - a - b).unwrap() * gauss_2f1(&q, t, &ctrl()).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{} vs {}", lhs, rhs);
    }
}
