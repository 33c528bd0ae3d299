//! Seeded verification suites, shared by the `selftest` command and the
//! acceptance tests.
//!
//! Each suite takes the parameter-derivation routine as an argument so a
//! deliberately broken derivation can be run through the same checks.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::hypergeom::{
    gauss_2f1, gauss_2f1_derivative, gauss_2f1_second_derivative, HypParams, SeriesControl,
};
use crate::jet::ZJet;
use crate::mobius::principal_power;
use crate::oracle::{
    compare_closed_numeric, residual_scale_z, residual_z, IntegrationControl, PathSpec,
};
use crate::papperitz::{
    derive_params, eval_basis, eval_solution, fit_ivp, Basis, DegeneracyClass, DerivedParams,
    EquationParams,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Parameter derivation under test.
pub type Deriver = fn(&EquationParams) -> DerivedParams;

pub const DEFAULT_SEED: u64 = 20050810;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub quick: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            quick: false,
        }
    }
}

impl SuiteConfig {
    fn count(&self, full: usize, quick: usize) -> usize {
        if self.quick {
            quick
        } else {
            full
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

const MAX_LISTED_FAILURES: usize = 5;

/// Pass counts of one suite plus the first few failure messages.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.check(false, || message);
    }

    pub fn ok(&self) -> bool {
        self.total > 0 && self.passed == self.total
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{}: {}/{} {}",
            self.name, self.passed, self.total, verdict
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let m = a.norm().max(b.norm());
    if m == 0.0 {
        0.0
    } else {
        (a - b).norm() / m
    }
}

fn uniform_complex(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi))
}

/// `(a, b, c)` with every real and imaginary part uniform in `[-2, 2]`.
pub fn random_equation(rng: &mut ChaCha8Rng) -> EquationParams {
    EquationParams {
        a: uniform_complex(rng, -2.0, 2.0),
        b: uniform_complex(rng, -2.0, 2.0),
        c: uniform_complex(rng, -2.0, 2.0),
    }
}

/// Hypergeometric parameters for the identity suite: `alpha`, `beta` with
/// parts in `[-2, 2]`, `gamma` with real part in `[0.5, 3]`.
pub fn random_hyp(rng: &mut ChaCha8Rng) -> HypParams {
    loop {
        let a = uniform_complex(rng, -2.0, 2.0);
        let b = uniform_complex(rng, -2.0, 2.0);
        let g = Complex64::new(rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0));
        if let Ok(p) = HypParams::new(a, b, g) {
            return p;
        }
    }
}

fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(
        radius * rng.gen_range(0.0f64..1.0).sqrt(),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

const MAX_POINT_ATTEMPTS: usize = 1000;

/// A point of the box `Re z in [-3, 3]`, `Im z in [0.15, 3]` (outside the
/// 0.1-disk around `i`) where both basis members evaluate.
pub fn reachable_point(
    rng: &mut ChaCha8Rng,
    d: &DerivedParams,
    ctrl: &SeriesControl,
) -> Result<(Complex64, ZJet, ZJet), Error> {
    let mut last = None;
    for _ in 0..MAX_POINT_ATTEMPTS {
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.15..3.0));
        if (z - I).norm() < 0.1 {
            continue;
        }
        match (
            eval_basis(d, Basis::First, z, ctrl),
            eval_basis(d, Basis::Second, z, ctrl),
        ) {
            (Ok(a), Ok(b)) => return Ok((z, a, b)),
            (Err(e), _) | (_, Err(e)) if e.is_unreachable_point() => last = Some(e),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Indicial-root, parameter-relation and discriminant identities on random
/// `(a, b, c)`, relative tolerance `1e-12`.
pub fn parameter_identities(cfg: &SuiteConfig, derive: Deriver) -> SuiteReport {
    let mut rep = SuiteReport::new("parameter identities");
    let mut rng = cfg.rng(1);
    let tol = 1e-12;
    for _ in 0..cfg.count(1000, 100) {
        let p = random_equation(&mut rng);
        let d = derive(&p);
        let one_minus_a = 1.0 - p.a;
        let plus = p.b + I * p.c;
        let minus = p.b - I * p.c;
        let mut close = |name: &str, lhs: Complex64, rhs: Complex64| {
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            rep.check((lhs - rhs).norm() <= tol * scale, || {
                format!("{name}: {lhs} vs {rhs} for a={} b={} c={}", p.a, p.b, p.c)
            });
        };
        for (name, root) in [
            ("indicial root lambda", d.lambda),
            ("indicial root lambda2", d.lambda2),
        ] {
            close(name, root * root - one_minus_a * root, plus);
        }
        close("gamma = 2 lambda + a", d.gamma, 2.0 * d.lambda + p.a);
        close("alpha + beta", d.alpha + d.beta, 1.0 + 2.0 * d.lambda - p.a);
        close(
            "alpha beta",
            d.alpha * d.beta,
            d.lambda * d.lambda + one_minus_a * d.lambda - minus,
        );
        close(
            "Delta^2",
            d.delta * d.delta,
            one_minus_a * one_minus_a + 4.0 * plus,
        );
        close(
            "Delta*^2",
            d.delta_star * d.delta_star,
            one_minus_a * one_minus_a + 4.0 * minus,
        );
    }
    rep
}

/// Symmetry, Euler and Pfaff identities, derivative central differences and
/// terminating-series Horner checks.
pub fn hypergeometric_identities(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("hypergeometric identities");
    let mut rng = cfg.rng(2);
    let ctrl = SeriesControl::default();
    let one = Complex64::new(1.0, 0.0);

    for _ in 0..cfg.count(200, 40) {
        let p = random_hyp(&mut rng);
        let (a, b, g) = (p.alpha(), p.beta(), p.gamma());
        let t = disk_point(&mut rng, 0.6);

        let run = || -> Result<[(&'static str, f64, f64); 5], Error> {
            let f = gauss_2f1(&p, t, &ctrl)?;
            let sym = gauss_2f1(&p.swapped(), t, &ctrl)?;
            let euler = principal_power(one - t, g - a - b)?
                * gauss_2f1(&HypParams::new(g - a, g - b, g)?, t, &ctrl)?;

            // Pfaff on |t| <= 0.5, Re t < 0.5
            let tp = t * (0.5 / 0.6);
            let fp = gauss_2f1(&p, tp, &ctrl)?;
            let pfaff = principal_power(one - tp, -b)?
                * gauss_2f1(&HypParams::new(g - a, b, g)?, tp / (tp - 1.0), &ctrl)?;

            let h = 1e-6;
            let fd1 = (gauss_2f1(&p, t + h, &ctrl)? - gauss_2f1(&p, t - h, &ctrl)?) / (2.0 * h);
            let d1 = gauss_2f1_derivative(&p, t, &ctrl)?;
            let h2 = 1e-4;
            let fd2 = (gauss_2f1(&p, t + h2, &ctrl)? - 2.0 * f + gauss_2f1(&p, t - h2, &ctrl)?)
                / (h2 * h2);
            let d2 = gauss_2f1_second_derivative(&p, t, &ctrl)?;
            Ok([
                ("symmetry", rel(f, sym), 1e-13),
                ("Euler", rel(f, euler), 1e-12),
                ("Pfaff", rel(fp, pfaff), 1e-12),
                ("first derivative", rel(d1, fd1), 1e-6),
                ("second derivative", rel(d2, fd2), 1e-5),
            ])
        };
        match run() {
            Ok(checks) => {
                for (name, err, tol) in checks {
                    rep.check(err <= tol, || {
                        format!("{name}: rel err {err:e} > {tol:e} for ({a}, {b}; {g}) at t = {t}")
                    });
                }
            }
            Err(e) => rep.fail(format!(
                "evaluation failed for ({a}, {b}; {g}) at t = {t}: {e}"
            )),
        }
    }

    // alpha = -n against an explicit Horner evaluation
    for n in 0..=5u32 {
        for _ in 0..cfg.count(10, 2) {
            let b = uniform_complex(&mut rng, -2.0, 2.0);
            let g = Complex64::new(rng.gen_range(0.5..3.0), rng.gen_range(-2.0..2.0));
            let t = disk_point(&mut rng, 0.6);
            let a = -(n as f64);
            let mut coeffs = vec![one];
            for j in 0..n {
                let j = j as f64;
                let next = coeffs[coeffs.len() - 1] * (a + j) * (b + j) / ((g + j) * (j + 1.0));
                coeffs.push(next);
            }
            let horner = coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * t + ck);
            match HypParams::new(a.into(), b, g).and_then(|p| gauss_2f1(&p, t, &ctrl)) {
                Ok(v) => {
                    let err = rel(v, horner);
                    rep.check(err <= 1e-14, || format!("Horner n = {n}: rel err {err:e}"));
                }
                Err(e) => rep.fail(format!("Horner n = {n}: {e}")),
            }
        }
    }
    rep
}

/// Both basis members of random generic equations substituted back into
/// the equation at reachable points.
pub fn closed_form_residuals(cfg: &SuiteConfig, derive: Deriver) -> SuiteReport {
    let mut rep = SuiteReport::new("closed-form residuals");
    let mut rng = cfg.rng(3);
    let ctrl = SeriesControl::default();
    let draws = cfg.count(200, 20);
    let points = cfg.count(20, 5);
    let mut done = 0;
    while done < draws {
        let p = random_equation(&mut rng);
        let d = derive(&p);
        if d.degeneracy != DegeneracyClass::Generic {
            continue;
        }
        done += 1;
        for _ in 0..points {
            match reachable_point(&mut rng, &d, &ctrl) {
                Ok((z, y1, y2)) => {
                    for (name, j) in [("first", y1), ("second", y2)] {
                        let res = residual_z(&p, &j, z).norm();
                        let scale = residual_scale_z(&j, z);
                        rep.check(res <= 1e-8 * scale, || {
                            format!(
                                "{name} member: |residual| = {res:e} > 1e-8 * {scale:e} at z = {z} for a={} b={} c={}",
                                p.a, p.b, p.c
                            )
                        });
                    }
                }
                Err(e) => rep.fail(format!(
                    "no reachable point for a={} b={} c={}: {e}",
                    p.a, p.b, p.c
                )),
            }
        }
    }
    rep
}

/// The path used for closed-form versus integrator comparisons.
pub fn standard_path() -> PathSpec {
    PathSpec::with_default_radius(vec![
        Complex64::new(0.0, 2.0),
        Complex64::new(1.0, 2.0),
        Complex64::new(2.0, 2.0),
    ])
    .expect("standard path clears both singular points")
}

/// Each basis member of random generic equations, seeded into the
/// integrator at `2i` and compared along `2i -> 1+2i -> 2+2i`.
pub fn oracle_agreement(cfg: &SuiteConfig, derive: Deriver) -> SuiteReport {
    let mut rep = SuiteReport::new("oracle agreement");
    let mut rng = cfg.rng(4);
    let ctrl = SeriesControl::default();
    let ictrl = IntegrationControl::default();
    let path = standard_path();
    let mut done = 0;
    while done < cfg.count(20, 4) {
        let p = random_equation(&mut rng);
        let d = derive(&p);
        if d.degeneracy != DegeneracyClass::Generic {
            continue;
        }
        done += 1;
        // the integrator always sees the true coefficients
        let d = DerivedParams { params: p, ..d };
        for (c1, c2) in [(1.0, 0.0), (0.0, 1.0)] {
            match compare_closed_numeric(&d, c1.into(), c2.into(), &path, &ictrl, &ctrl) {
                Ok(report) => rep.check(report.max_rel_err <= 1e-6, || {
                    format!(
                        "C = ({c1}, {c2}): max rel err {:e} for a={} b={} c={}",
                        report.max_rel_err, p.a, p.b, p.c
                    )
                }),
                Err(e) => rep.fail(format!("a={} b={} c={}: {e}", p.a, p.b, p.c)),
            }
        }
    }
    rep
}

/// Elementary cases: the free equation, the constant solution and the
/// `((z+i)/(z-i))^p` family.
pub fn elementary_solutions(derive: Deriver) -> SuiteReport {
    let mut rep = SuiteReport::new("elementary solutions");
    let ctrl = SeriesControl::default();
    let zero = Complex64::new(0.0, 0.0);

    // a = b = c = 0: first member is (z - i)/(2i)
    let p = EquationParams::real(0.0, 0.0, 0.0).expect("finite");
    let d = derive(&p);
    let h = 0.25;
    let samples: Result<Vec<Complex64>, Error> = (0..17)
        .map(|k| {
            let z = Complex64::new(-2.0 + h * k as f64, 2.0);
            eval_basis(&d, Basis::First, z, &ctrl).map(|j| j.y)
        })
        .collect();
    match samples {
        Ok(ys) => {
            for w in ys.windows(3) {
                let second = (w[2] - 2.0 * w[1] + w[0]).norm();
                rep.check(second <= 1e-10, || {
                    format!("second difference {second:e} of first member")
                });
            }
        }
        Err(e) => rep.fail(format!("first member of the free equation: {e}")),
    }
    for z in [
        Complex64::new(3.0, 0.0),
        Complex64::new(-1.0, 0.5),
        Complex64::new(0.5, 2.5),
    ] {
        match eval_solution(&d, 2.0 * I, zero, z, &ctrl) {
            Ok(j) => {
                let err = (j.y - (z - I)).norm();
                rep.check(err <= 1e-10, || {
                    format!("2i y1 at {z}: error {err:e} against z - i")
                });
            }
            Err(e) => rep.fail(format!("2i y1 at {z}: {e}")),
        }
    }

    // (a, 0, 0), a = 1/2: second member is the constant 1
    let d = derive(&EquationParams::real(0.5, 0.0, 0.0).expect("finite"));
    for z in [
        Complex64::new(0.0, 0.5),
        Complex64::new(1.0, 2.0),
        Complex64::new(-2.0, 0.3),
    ] {
        match eval_basis(&d, Basis::Second, z, &ctrl) {
            Ok(j) => {
                let err = (j.y - 1.0).norm().max(j.dy.norm()).max(j.d2y.norm());
                rep.check(err <= 1e-14, || {
                    format!("constant member at {z}: deviation {err:e}")
                });
            }
            Err(e) => rep.fail(format!("constant member at {z}: {e}")),
        }
    }

    // b = p^2, c = ip(a-1) is solved by ((z+i)/(z-i))^p
    for a in [0.0, 0.3] {
        for pw in [0.5, 1.0, 1.5] {
            let p = EquationParams {
                a: a.into(),
                b: (pw * pw).into(),
                c: Complex64::new(0.0, pw * (a - 1.0)),
            };
            for z in [
                Complex64::new(0.3, 2.0),
                Complex64::new(-1.5, 0.7),
                Complex64::new(2.0, -3.0),
            ] {
                let u = (z + I) / (z - I);
                let y = u.powf(pw);
                let s = 1.0 + z * z;
                let j = ZJet::new(
                    y,
                    -2.0 * I * pw * y / s,
                    (-4.0 * pw * pw + 4.0 * I * pw * z) * y / (s * s),
                );
                let res = residual_z(&p, &j, z).norm();
                let scale = residual_scale_z(&j, z);
                rep.check(res <= 1e-10 * scale, || {
                    format!("family a = {a}, p = {pw} at {z}: residual {res:e}")
                });
            }
            let d = derive(&p);
            let hit = [d.lambda, d.lambda2]
                .iter()
                .any(|&e| (e + pw).norm() <= 1e-12);
            rep.check(hit, || {
                format!(
                    "family a = {a}, p = {pw}: exponents {} and {} miss {}",
                    d.lambda, d.lambda2, -pw
                )
            });
        }
    }
    rep
}

/// `(1+z^2)^2 y'' + Az(1+z^2) y' + By = 0` solved through `a = A/2`,
/// `b = B/4`, `c = 0`, and checked against the original coefficients.
pub fn kamke_special_case(cfg: &SuiteConfig, derive: Deriver) -> SuiteReport {
    let mut rep = SuiteReport::new("Kamke special case");
    let mut rng = cfg.rng(6);
    let ctrl = SeriesControl::default();
    for (big_a, big_b) in [(1.0, 1.0), (3.0, -2.0)] {
        let p = EquationParams::real(big_a / 2.0, big_b / 4.0, 0.0).expect("finite");
        let d = derive(&p);
        for _ in 0..10 {
            match reachable_point(&mut rng, &d, &ctrl) {
                Ok((z, y1, y2)) => {
                    for j in [y1, y2] {
                        let s = 1.0 + z * z;
                        let res = (s * s * j.d2y + big_a * z * s * j.dy + big_b * j.y).norm();
                        let scale = residual_scale_z(&j, z);
                        rep.check(res <= 1e-8 * scale, || {
                            format!("(A, B) = ({big_a}, {big_b}) at {z}: residual {res:e}")
                        });
                    }
                }
                Err(e) => rep.fail(format!("(A, B) = ({big_a}, {big_b}): {e}")),
            }
        }
    }
    rep
}

/// Classification of the repeated-exponent and polynomial-escape cases.
pub fn degeneracy_detection(derive: Deriver) -> SuiteReport {
    let mut rep = SuiteReport::new("degeneracy detection");
    let ctrl = SeriesControl::default();

    let d = derive(&EquationParams::real(0.0, -0.25, 0.0).expect("finite"));
    rep.check(d.degeneracy == DegeneracyClass::RepeatedExponent, || {
        format!("(0, -1/4, 0) classified {}", d.degeneracy)
    });
    let z0 = Complex64::new(0.5, 2.0);
    let fit = fit_ivp(&d, z0, 1.0.into(), 0.0.into(), &ctrl);
    rep.check(
        matches!(fit, Err(Error::DegenerateWronskian { .. })),
        || format!("fit at Delta = 0 returned {fit:?}"),
    );

    let d = derive(&EquationParams::real(0.0, 0.0, 0.0).expect("finite"));
    rep.check(d.degeneracy == DegeneracyClass::Generic, || {
        format!("(0, 0, 0) classified {}", d.degeneracy)
    });
    match d.second_hyp() {
        Ok(q) => rep.check(
            q.gamma().norm() <= 1e-10 && q.truncation_degree() == Some(0),
            || {
                format!(
                    "second parameters ({}, {}; {})",
                    q.alpha(),
                    q.beta(),
                    q.gamma()
                )
            },
        ),
        Err(e) => rep.fail(format!("second parameters of (0, 0, 0): {e}")),
    }
    for z in [
        Complex64::new(0.0, 2.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(-1.0, 0.4),
    ] {
        match eval_basis(&d, Basis::Second, z, &ctrl) {
            Ok(j) => rep.check(
                j.y == Complex64::new(1.0, 0.0) && j.dy.norm() == 0.0,
                || format!("second member of (0, 0, 0) at {z} is {:?}", j),
            ),
            Err(e) => rep.fail(format!("second member of (0, 0, 0) at {z}: {e}")),
        }
    }
    rep
}

/// Every suite, in order.
pub fn run_all(cfg: &SuiteConfig, derive: Deriver) -> Vec<SuiteReport> {
    vec![
        parameter_identities(cfg, derive),
        hypergeometric_identities(cfg),
        closed_form_residuals(cfg, derive),
        oracle_agreement(cfg, derive),
        elementary_solutions(derive),
        kamke_special_case(cfg, derive),
        degeneracy_detection(derive),
    ]
}

/// The production derivation.
pub fn default_deriver() -> Deriver {
    derive_params
}
