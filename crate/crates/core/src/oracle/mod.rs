//! Independent checks on the closed form.
//!
//! Nothing in here calls into the hypergeometric machinery except
//! [`compare_closed_numeric`], which exists to put the two side by side.
//! The residuals and the integrator only use the equation's coefficients.

mod compare;
mod integrate;
mod path;

pub use compare::{compare_closed_numeric, VerifyReport, VerifySample};
pub use integrate::{
    integrate_ivp, integrate_ivp_with_observer, second_derivative, IntegrationControl, PathSample,
};
pub use path::{segment_distance, PathSpec, DEFAULT_MIN_SINGULARITY_DISTANCE};

use num_complex::Complex64;

use crate::error::Result;
use crate::jet::{Coordinate, Jet2, TJet, ZJet};
use crate::papperitz::EquationParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y`.
pub fn residual_z(p: &EquationParams, jet: &ZJet, z: Complex64) -> Complex64 {
    let s = 1.0 + z * z;
    s * s * jet.d2y + 2.0 * p.a * z * s * jet.dy + 4.0 * (p.b + p.c * z) * jet.y
}

/// The equation after the change of variable to `t`:
/// `t^2(1-t) y'' + t[a - (2-a)t] y' + [(b-ic)t - (b+ic)] y`.
pub fn residual_t(p: &EquationParams, jet: &TJet, t: Complex64) -> Complex64 {
    t * t * (1.0 - t) * jet.d2y
        + t * (p.a - (2.0 - p.a) * t) * jet.dy
        + ((p.b - I * p.c) * t - (p.b + I * p.c)) * jet.y
}

/// Scale used to judge `residual_z`: `(1+|z|^2)^2 (|y|+|y'|+|y''|)`.
pub fn residual_scale_z(jet: &ZJet, z: Complex64) -> f64 {
    let s = 1.0 + z.norm_sqr();
    s * s * jet.magnitude()
}

/// Scale used to judge `residual_t`: `(1+|t|)^3 (|y|+|y'|+|y''|)`.
pub fn residual_scale_t(jet: &TJet, t: Complex64) -> f64 {
    (1.0 + t.norm()).powi(3) * jet.magnitude()
}

/// Central-difference jet of `f` at `z` with a real step `h`.
pub fn finite_difference_jet<C, F>(f: F, z: Complex64, h: f64) -> Result<Jet2<C>>
where
    C: Coordinate,
    F: Fn(Complex64) -> Result<Complex64>,
{
    let fm = f(z - h)?;
    let f0 = f(z)?;
    let fp = f(z + h)?;
    Ok(Jet2::new(
        f0,
        (fp - fm) / (2.0 * h),
        (fp - 2.0 * f0 + fm) / (h * h),
    ))
}
