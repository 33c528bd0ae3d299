//! The bilinear change of variable `t = (z - i)/(z + i)` and its inverse.
//!
//! The map sends `z = i` to `t = 0`, `z = -i` to `t = inf` and the point at
//! infinity to `t = 1`. The upper half-plane goes onto the open unit disk.
//!
//! All multivalued operations here use the principal branch, `Arg` in
//! `(-pi, pi]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative tolerance for the pole guards.
pub const POLE_TOL: f64 = 1e-14;

fn guard_minus_i(z: Complex64) -> Result<Complex64> {
    let denom = z + I;
    if denom.norm() <= POLE_TOL * (1.0 + z.norm()) {
        return Err(Error::PoleAtMinusI { z });
    }
    Ok(denom)
}

/// `t = (z - i)/(z + i)`.
pub fn z_to_t(z: Complex64) -> Result<Complex64> {
    let denom = guard_minus_i(z)?;
    Ok((z - I) / denom)
}

/// `z = i (1 + t)/(1 - t)`.
pub fn t_to_z(t: Complex64) -> Result<Complex64> {
    let denom = Complex64::new(1.0, 0.0) - t;
    if denom.norm() <= POLE_TOL * (1.0 + t.norm()) {
        return Err(Error::PoleAtOne { t });
    }
    Ok(I * (1.0 + t) / denom)
}

/// `dt/dz = 2i/(z + i)^2`.
pub fn dt_dz(z: Complex64) -> Result<Complex64> {
    let denom = guard_minus_i(z)?;
    Ok(2.0 * I / (denom * denom))
}

/// `d^2t/dz^2 = -4i/(z + i)^3`.
pub fn d2t_dz2(z: Complex64) -> Result<Complex64> {
    let denom = guard_minus_i(z)?;
    Ok(-4.0 * I / (denom * denom * denom))
}

/// Principal logarithm, imaginary part in `(-pi, pi]`.
///
/// `f64::atan2` returns `-pi` for a negative real axis carrying `-0.0` in
/// the imaginary part; that sign is folded back onto `+pi`.
pub fn principal_log(w: Complex64) -> Complex64 {
    let mut arg = w.im.atan2(w.re);
    if arg == -std::f64::consts::PI {
        arg = std::f64::consts::PI;
    }
    Complex64::new(w.norm().ln(), arg)
}

/// `w^e = exp(e Log w)` on the principal branch.
///
/// `0^e` is `0` when `Re e > 0` and an error otherwise.
pub fn principal_power(w: Complex64, e: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return if e.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::ZeroBaseNonpositiveExponent { exponent: e })
        };
    }
    if e == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok((e * principal_log(w)).exp())
}

/// Principal square root (`Re >= 0`, and `Im >= 0` on the cut).
pub fn principal_sqrt(w: Complex64) -> Complex64 {
    if w.im == 0.0 && w.re < 0.0 {
        // -0.0 in the imaginary part would otherwise select -i sqrt|w|
        return Complex64::new(0.0, (-w.re).sqrt());
    }
    w.sqrt()
}
