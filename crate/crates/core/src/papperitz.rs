//! Closed-form solution of
//!
//! ```text
//! (1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y = 0
//! ```
//!
//! With `t = (z-i)/(z+i)` and `y = t^lambda Y(t)`, `Y` satisfies the Gauss
//! hypergeometric equation. The exponent `lambda` is a root of
//! `lambda^2 - (1-a) lambda - (b+ic) = 0`, and
//!
//! ```text
//! Delta  = sqrt((1-a)^2 + 4(b+ic))     Delta* = sqrt((1-a)^2 + 4(b-ic))
//! lambda = (1-a+Delta)/2               gamma  = 1 + Delta
//! alpha  = 1-a + (Delta+Delta*)/2      beta   = 1-a + (Delta-Delta*)/2
//! ```
//!
//! The two basis members are
//!
//! ```text
//! y1 = t^lambda        F(alpha, beta; gamma; t)
//! y2 = t^(1+lambda-gamma) F(alpha-gamma+1, beta-gamma+1; 2-gamma; t)
//! ```
//!
//! Square roots and powers are principal. Parameter sets where this pair is
//! not a basis are classified by [`DegeneracyClass`] rather than solved.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::{gauss_2f1_jet, HypParams, SeriesControl, INT_TOL};
use crate::jet::{TJet, ZJet};
use crate::mobius::{principal_power, principal_sqrt, z_to_t};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients `(a, b, c)` of the equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquationParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl EquationParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("c", c)] {
            if !value.re.is_finite() || !value.im.is_finite() {
                return Err(Error::NonFiniteParameter { name, value });
            }
        }
        Ok(Self { a, b, c })
    }

    /// Real-coefficient shorthand.
    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DegeneracyClass {
    Generic,
    /// `Delta = 0`: both exponents coincide, the second solution is logarithmic.
    RepeatedExponent,
    /// `gamma` is a nonpositive integer and the first series does not terminate.
    FirstBasisInvalid,
    /// `2 - gamma` is a nonpositive integer and the second series does not terminate.
    SecondBasisInvalid,
}

impl fmt::Display for DegeneracyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DegeneracyClass::Generic => "Generic",
            DegeneracyClass::RepeatedExponent => "RepeatedExponent",
            DegeneracyClass::FirstBasisInvalid => "FirstBasisInvalid",
            DegeneracyClass::SecondBasisInvalid => "SecondBasisInvalid",
        };
        f.write_str(s)
    }
}

/// Which member of the closed-form pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    First,
    Second,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::First => "First",
            Basis::Second => "Second",
        }
    }
}

/// Everything derived from `(a, b, c)` that the closed form needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub params: EquationParams,
    pub delta: Complex64,
    pub delta_star: Complex64,
    pub lambda: Complex64,
    /// Second exponent `1 + lambda - gamma = (1 - a - Delta)/2`.
    pub lambda2: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub degeneracy: DegeneracyClass,
}

impl DerivedParams {
    /// Hypergeometric parameters of the first member.
    pub fn first_hyp(&self) -> Result<HypParams> {
        HypParams::new(self.alpha, self.beta, self.gamma)
    }

    /// `(alpha-gamma+1, beta-gamma+1, 2-gamma)`.
    pub fn second_hyp(&self) -> Result<HypParams> {
        HypParams::new(
            self.alpha - self.gamma + 1.0,
            self.beta - self.gamma + 1.0,
            2.0 - self.gamma,
        )
    }

    pub fn exponent(&self, which: Basis) -> Complex64 {
        match which {
            Basis::First => self.lambda,
            Basis::Second => self.lambda2,
        }
    }

    /// Whether the class allows this member to be used as part of a basis.
    pub fn is_available(&self, which: Basis) -> bool {
        use DegeneracyClass::*;
        !matches!(
            (which, self.degeneracy),
            (Basis::First, FirstBasisInvalid)
                | (Basis::Second, RepeatedExponent | SecondBasisInvalid)
        )
    }
}

pub fn derive_params(p: &EquationParams) -> DerivedParams {
    let one_minus_a = 1.0 - p.a;
    let base = one_minus_a * one_minus_a;
    let delta = principal_sqrt(base + 4.0 * (p.b + I * p.c));
    let delta_star = principal_sqrt(base + 4.0 * (p.b - I * p.c));

    let mut d = DerivedParams {
        params: *p,
        delta,
        delta_star,
        lambda: (one_minus_a + delta) / 2.0,
        lambda2: (one_minus_a - delta) / 2.0,
        alpha: one_minus_a + (delta + delta_star) / 2.0,
        beta: one_minus_a + (delta - delta_star) / 2.0,
        gamma: 1.0 + delta,
        degeneracy: DegeneracyClass::Generic,
    };
    d.degeneracy = if delta.norm() <= INT_TOL {
        DegeneracyClass::RepeatedExponent
    } else if d.first_hyp().is_err() {
        DegeneracyClass::FirstBasisInvalid
    } else if d.second_hyp().is_err() {
        DegeneracyClass::SecondBasisInvalid
    } else {
        DegeneracyClass::Generic
    };
    d
}

/// `coef * t^e`, treating a zero coefficient as an exact zero so that
/// `t = 0` does not trip the zero-base check for vanishing terms.
fn scaled_power(coef: Complex64, t: Complex64, e: Complex64) -> Result<Complex64> {
    if coef == ZERO {
        Ok(ZERO)
    } else {
        Ok(coef * principal_power(t, e)?)
    }
}

fn member_t_jet(
    d: &DerivedParams,
    which: Basis,
    t: Complex64,
    ctrl: &SeriesControl,
) -> Result<TJet> {
    let hyp = match which {
        Basis::First => d.first_hyp(),
        Basis::Second => d.second_hyp(),
    }
    .map_err(|_| Error::DegenerateBasis {
        which: which.name(),
        class: d.degeneracy.to_string(),
    })?;
    let mu = d.exponent(which);
    let (f, df, d2f) = gauss_2f1_jet(&hyp, t, ctrl)?;
    let p0 = principal_power(t, mu)?;
    let p1 = scaled_power(mu, t, mu - 1.0)?;
    let p2 = scaled_power(mu * (mu - 1.0), t, mu - 2.0)?;
    Ok(TJet::new(
        p0 * f,
        p1 * f + p0 * df,
        p2 * f + 2.0 * p1 * df + p0 * d2f,
    ))
}

fn check_available(d: &DerivedParams, which: Basis) -> Result<()> {
    if d.is_available(which) {
        Ok(())
    } else {
        Err(Error::DegenerateBasis {
            which: which.name(),
            class: d.degeneracy.to_string(),
        })
    }
}

/// One basis member as a jet in `t`.
pub fn eval_basis_t(
    d: &DerivedParams,
    which: Basis,
    t: Complex64,
    ctrl: &SeriesControl,
) -> Result<TJet> {
    check_available(d, which)?;
    member_t_jet(d, which, t, ctrl)
}

/// One basis member as a jet in `z`, derivatives by the chain rule.
pub fn eval_basis(
    d: &DerivedParams,
    which: Basis,
    z: Complex64,
    ctrl: &SeriesControl,
) -> Result<ZJet> {
    check_available(d, which)?;
    let t = z_to_t(z)?;
    member_t_jet(d, which, t, ctrl)?.to_z(z)
}

/// `C1 y1 + C2 y2`. A member that is not available may only carry an exactly
/// zero coefficient.
pub fn eval_solution(
    d: &DerivedParams,
    c1: Complex64,
    c2: Complex64,
    z: Complex64,
    ctrl: &SeriesControl,
) -> Result<ZJet> {
    let mut acc = ZJet::zero();
    for (coef, which) in [(c1, Basis::First), (c2, Basis::Second)] {
        if coef == ZERO {
            continue;
        }
        acc = acc + eval_basis(d, which, z, ctrl)? * coef;
    }
    Ok(acc)
}

/// `y1 y2' - y2 y1'`.
pub fn wronskian(d: &DerivedParams, z: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    let y1 = eval_basis(d, Basis::First, z, ctrl)?;
    let y2 = eval_basis(d, Basis::Second, z, ctrl)?;
    Ok(y1.y * y2.dy - y2.y * y1.dy)
}

/// Relative Wronskian threshold for [`fit_ivp`].
pub const WRONSKIAN_TOL: f64 = 1e-10;

/// Coefficients `(C1, C2)` matching `y(z0) = y0`, `y'(z0) = dy0` (Cramer's rule).
///
/// A repeated exponent is not rejected up front: its two formula members
/// coincide and the Wronskian test reports the failure.
pub fn fit_ivp(
    d: &DerivedParams,
    z0: Complex64,
    y0: Complex64,
    dy0: Complex64,
    ctrl: &SeriesControl,
) -> Result<(Complex64, Complex64)> {
    let (y1, y2) = if d.degeneracy == DegeneracyClass::RepeatedExponent {
        let t = z_to_t(z0)?;
        (
            member_t_jet(d, Basis::First, t, ctrl)?.to_z(z0)?,
            member_t_jet(d, Basis::Second, t, ctrl)?.to_z(z0)?,
        )
    } else {
        (
            eval_basis(d, Basis::First, z0, ctrl)?,
            eval_basis(d, Basis::Second, z0, ctrl)?,
        )
    };
    let w = y1.y * y2.dy - y2.y * y1.dy;
    let scale = y1.y.norm() * y2.dy.norm() + y2.y.norm() * y1.dy.norm();
    if w.norm().is_nan() || w.norm() < WRONSKIAN_TOL * scale || w == ZERO {
        return Err(Error::DegenerateWronskian {
            wronskian: w.norm(),
            scale,
        });
    }
    let c1 = (y0 * y2.dy - y2.y * dy0) / w;
    let c2 = (y1.y * dy0 - y1.dy * y0) / w;
    Ok((c1, c2))
}
