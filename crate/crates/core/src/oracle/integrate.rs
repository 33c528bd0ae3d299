//! Dormand-Prince 5(4) on the complex first-order system
//! `y' = v`, `v' = -[2az(1+z^2) v + 4(b+cz) y]/(1+z^2)^2`,
//! stepping in arc length along each straight segment of a [`PathSpec`].

use num_complex::Complex64;

use super::path::PathSpec;
use crate::error::{Error, Result};
use crate::papperitz::EquationParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for IntegrationControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
        }
    }
}

impl IntegrationControl {
    pub fn new(rel_tol: f64, abs_tol: f64, max_steps: usize) -> Result<Self> {
        if rel_tol.is_nan() || abs_tol.is_nan() || rel_tol <= 0.0 || abs_tol <= 0.0 {
            return Err(Error::InvalidControl(format!(
                "tolerances must be positive, got rel_tol = {rel_tol}, abs_tol = {abs_tol}"
            )));
        }
        if max_steps == 0 {
            return Err(Error::InvalidControl("max_steps must be at least 1".into()));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_steps,
        })
    }
}

/// Solution state at a waypoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub z: Complex64,
    pub y: Complex64,
    pub dy: Complex64,
}

/// `y''` as dictated by the equation itself.
pub fn second_derivative(
    p: &EquationParams,
    z: Complex64,
    y: Complex64,
    dy: Complex64,
) -> Complex64 {
    let s = 1.0 + z * z;
    -(2.0 * p.a * z * s * dy + 4.0 * (p.b + p.c * z) * y) / (s * s)
}

type State = [Complex64; 2];

// Dormand-Prince tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

fn comb(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (w, k) in terms {
        out[0] += k[0] * (h * w);
        out[1] += k[1] * (h * w);
    }
    out
}

struct Segment<'a> {
    p: &'a EquationParams,
    start: Complex64,
    dir: Complex64,
}

impl Segment<'_> {
    fn z(&self, s: f64) -> Complex64 {
        self.start + self.dir * s
    }

    fn rhs(&self, s: f64, x: &State) -> State {
        let z = self.z(s);
        [
            self.dir * x[1],
            self.dir * second_derivative(self.p, z, x[0], x[1]),
        ]
    }
}

/// Integrate along `path` from `(y0, dy0)` at its first waypoint.
///
/// Returns one sample per waypoint, the start included.
pub fn integrate_ivp(
    p: &EquationParams,
    path: &PathSpec,
    y0: Complex64,
    dy0: Complex64,
    ctrl: &IntegrationControl,
) -> Result<Vec<PathSample>> {
    integrate_ivp_with_observer(p, path, y0, dy0, ctrl, |_| {})
}

/// As [`integrate_ivp`], calling `observer` after every accepted step.
pub fn integrate_ivp_with_observer<F>(
    p: &EquationParams,
    path: &PathSpec,
    y0: Complex64,
    dy0: Complex64,
    ctrl: &IntegrationControl,
    mut observer: F,
) -> Result<Vec<PathSample>>
where
    F: FnMut(&PathSample),
{
    let mut x: State = [y0, dy0];
    let mut samples = vec![PathSample {
        z: path.start(),
        y: y0,
        dy: dy0,
    }];
    let mut steps = 0usize;

    for pair in path.waypoints().windows(2) {
        let (za, zb) = (pair[0], pair[1]);
        let length = (zb - za).norm();
        if length > 0.0 {
            let seg = Segment {
                p,
                start: za,
                dir: (zb - za) / length,
            };
            x = integrate_segment(&seg, length, x, ctrl, &mut steps, &mut observer)?;
        }
        samples.push(PathSample {
            z: zb,
            y: x[0],
            dy: x[1],
        });
    }
    Ok(samples)
}

fn error_norm(x: &State, x_new: &State, err: &State, ctrl: &IntegrationControl) -> f64 {
    (0..2)
        .map(|i| {
            let sc = ctrl.abs_tol + ctrl.rel_tol * x[i].norm().max(x_new[i].norm());
            err[i].norm() / sc
        })
        .fold(0.0, f64::max)
}

fn initial_step(
    seg: &Segment,
    x: &State,
    k1: &State,
    length: f64,
    ctrl: &IntegrationControl,
) -> f64 {
    // Hairer-Norsett-Wanner starting guess, order 5
    let scale = |v: &State, i: usize| ctrl.abs_tol + ctrl.rel_tol * v[i].norm();
    let d0 = (0..2)
        .map(|i| x[i].norm() / scale(x, i))
        .fold(0.0, f64::max);
    let d1 = (0..2)
        .map(|i| k1[i].norm() / scale(x, i))
        .fold(0.0, f64::max);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let h0 = h0.min(length);
    let x1 = comb(x, h0, &[(1.0, k1)]);
    let k2 = seg.rhs(h0, &x1);
    let d2 = (0..2)
        .map(|i| (k2[i] - k1[i]).norm() / scale(x, i))
        .fold(0.0, f64::max)
        / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(1.0 / 5.0)
    };
    (100.0 * h0).min(h1).min(length)
}

fn integrate_segment<F>(
    seg: &Segment,
    length: f64,
    mut x: State,
    ctrl: &IntegrationControl,
    steps: &mut usize,
    observer: &mut F,
) -> Result<State>
where
    F: FnMut(&PathSample),
{
    let mut s = 0.0;
    let mut k1 = seg.rhs(s, &x);
    let mut h = initial_step(seg, &x, &k1, length, ctrl);

    while s < length {
        if *steps >= ctrl.max_steps {
            return Err(Error::StepLimitExceeded {
                z: seg.z(s),
                max_steps: ctrl.max_steps,
            });
        }
        *steps += 1;

        let last = s + h >= length;
        if last {
            h = length - s;
        }

        let k2 = seg.rhs(s + C2 * h, &comb(&x, h, &[(A21, &k1)]));
        let k3 = seg.rhs(s + C3 * h, &comb(&x, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = seg.rhs(
            s + C4 * h,
            &comb(&x, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = seg.rhs(
            s + C5 * h,
            &comb(&x, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = seg.rhs(
            s + h,
            &comb(
                &x,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let x_new = comb(
            &x,
            h,
            &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
        );
        let s_new = if last { length } else { s + h };
        let k7 = seg.rhs(s_new, &x_new);

        let zero = Complex64::new(0.0, 0.0);
        let err = comb(
            &[zero, zero],
            h,
            &[
                (E1, &k1),
                (E3, &k3),
                (E4, &k4),
                (E5, &k5),
                (E6, &k6),
                (E7, &k7),
            ],
        );
        let norm = error_norm(&x, &x_new, &err, ctrl);

        if norm <= 1.0 {
            s = s_new;
            x = x_new;
            k1 = k7;
            observer(&PathSample {
                z: seg.z(s),
                y: x[0],
                dy: x[1],
            });
            let factor = if norm == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * norm.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            h *= factor;
        } else {
            h *= (SAFETY * norm.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
        }
    }
    Ok(x)
}
