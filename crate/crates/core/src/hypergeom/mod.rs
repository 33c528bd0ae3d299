//! Gauss hypergeometric function `F(alpha, beta; gamma; t)` for complex
//! parameters and argument, with its first two derivatives in `t`.
//!
//! Evaluation picks one of a small set of routes, see [`select_strategy`]:
//!
//! * the Maclaurin series itself, inside `|t| <= region_cutoff`;
//! * the terminating polynomial when `alpha` or `beta` is a nonpositive integer;
//! * a Pfaff transformation, `(1-t)^{-alpha} F(alpha, gamma-beta; gamma; t/(t-1))`
//!   or its `beta` twin, when `|t/(t-1)| <= region_cutoff` or when the
//!   transformed series terminates;
//! * the two-term Gauss connection formula in powers of `1 - t`.
//!
//! Anything else is reported as [`Error::EvaluationUnreachable`] rather than
//! returned with unknown accuracy. All powers are principal; the function is
//! cut along `t in [1, inf)`.

pub mod gamma;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::principal_power;

/// Integer-proximity tolerance for parameter degeneracy tests.
pub const INT_TOL: f64 = 1e-10;

/// Distance from `[1, inf)` under which an argument counts as on the cut.
pub const BRANCH_CUT_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// True when `x` is within [`INT_TOL`] of a (real) integer.
pub fn near_integer(x: Complex64) -> bool {
    x.im.abs() <= INT_TOL && (x.re - x.re.round()).abs() <= INT_TOL
}

/// `Some(k)` when `x` is within [`INT_TOL`] of `-k`, `k >= 0`.
pub fn nonpositive_integer(x: Complex64) -> Option<u64> {
    if near_integer(x) && x.re.round() <= 0.0 {
        Some((-x.re.round()) as u64)
    } else {
        None
    }
}

/// Parameters `(alpha, beta, gamma)` of `F(alpha, beta; gamma; t)`.
///
/// `gamma` may only sit at a nonpositive integer `-m` when one of the upper
/// parameters is `-k` with `k <= m`, so the series stops before the zero
/// denominator is reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
}

impl HypParams {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        let p = Self { alpha, beta, gamma };
        if let Some(m) = nonpositive_integer(gamma) {
            match p.truncation_degree() {
                Some(k) if k <= m => {}
                _ => return Err(Error::InvalidGamma { gamma }),
            }
        }
        Ok(p)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// Degree of the terminating polynomial, if the series terminates.
    pub fn truncation_degree(&self) -> Option<u64> {
        match (
            nonpositive_integer(self.alpha),
            nonpositive_integer(self.beta),
        ) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// `(beta, alpha, gamma)`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
            gamma: self.gamma,
        }
    }

    fn shifted(&self, n: f64) -> Result<Self> {
        Self::new(self.alpha + n, self.beta + n, self.gamma + n)
    }

    fn pfaff_alpha(&self) -> Result<Self> {
        Self::new(self.alpha, self.gamma - self.beta, self.gamma)
    }

    fn pfaff_beta(&self) -> Result<Self> {
        Self::new(self.gamma - self.alpha, self.beta, self.gamma)
    }
}

/// Knobs for the series and the region policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub region_cutoff: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 10_000,
            region_cutoff: 0.7,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize, region_cutoff: f64) -> Result<Self> {
        if rel_tol.is_nan() || rel_tol <= 0.0 {
            return Err(Error::InvalidControl(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidControl("max_terms must be at least 1".into()));
        }
        if !(region_cutoff > 0.0 && region_cutoff < 1.0) {
            return Err(Error::InvalidControl(format!(
                "region_cutoff must lie in (0, 1), got {region_cutoff}"
            )));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            region_cutoff,
        })
    }
}

/// Evaluation route chosen for a given `(params, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalStrategy {
    DirectSeries,
    PfaffOnAlpha,
    PfaffOnBeta,
    OneMinusTConnection,
    PolynomialTruncation,
    Unreachable,
}

/// The three moduli the region policy looks at: `|t|`, `|t/(t-1)|`, `|1-t|`.
pub fn region_moduli(t: Complex64) -> (f64, f64, f64) {
    let one_minus = (ONE - t).norm();
    let pfaff = if one_minus == 0.0 {
        f64::INFINITY
    } else {
        t.norm() / one_minus
    };
    (t.norm(), pfaff, one_minus)
}

/// Partial sums of the Maclaurin series `sum (alpha)_n (beta)_n / ((gamma)_n n!) w^n`.
///
/// Terminating series are summed to their last term for any `w`. Otherwise
/// `|w| < 1` is required and summation stops after two consecutive terms
/// below `rel_tol` relative to the running sum.
pub fn raw_series(p: &HypParams, w: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    let (alpha, beta, gamma) = (p.alpha, p.beta, p.gamma);
    if let Some(degree) = p.truncation_degree() {
        let mut term = ONE;
        let mut sum = ONE;
        for n in 0..degree {
            let k = n as f64;
            term *= (alpha + k) * (beta + k) / ((gamma + k) * (k + 1.0)) * w;
            sum += term;
        }
        return Ok(sum);
    }
    if w.norm() >= 1.0 {
        return Err(Error::OutsideUnitDisk { w });
    }
    let mut term = ONE;
    let mut sum = ONE;
    let mut small_in_a_row = 0;
    for n in 0..ctrl.max_terms {
        let k = n as f64;
        term *= (alpha + k) * (beta + k) / ((gamma + k) * (k + 1.0)) * w;
        sum += term;
        if term.norm() <= ctrl.rel_tol * sum.norm() {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok(sum);
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(Error::NoConvergence {
        w,
        max_terms: ctrl.max_terms,
    })
}

/// Pick an evaluation route. Pure function of its inputs.
pub fn select_strategy(p: &HypParams, t: Complex64, ctrl: &SeriesControl) -> EvalStrategy {
    if p.truncation_degree().is_some() {
        return EvalStrategy::PolynomialTruncation;
    }
    let cutoff = ctrl.region_cutoff;
    let (direct, pfaff, one_minus) = region_moduli(t);
    if direct <= cutoff {
        return EvalStrategy::DirectSeries;
    }
    if one_minus > 0.0 {
        let alpha_terminates = p
            .pfaff_alpha()
            .is_ok_and(|q| q.truncation_degree().is_some());
        let beta_terminates = p
            .pfaff_beta()
            .is_ok_and(|q| q.truncation_degree().is_some());
        if pfaff <= cutoff {
            return if beta_terminates && !alpha_terminates {
                EvalStrategy::PfaffOnBeta
            } else {
                EvalStrategy::PfaffOnAlpha
            };
        }
        if alpha_terminates {
            return EvalStrategy::PfaffOnAlpha;
        }
        if beta_terminates {
            return EvalStrategy::PfaffOnBeta;
        }
    }
    if one_minus <= cutoff && !near_integer(p.gamma - p.alpha - p.beta) {
        return EvalStrategy::OneMinusTConnection;
    }
    EvalStrategy::Unreachable
}

fn on_branch_cut(t: Complex64) -> bool {
    t.im.abs() <= BRANCH_CUT_TOL && t.re >= 1.0 - BRANCH_CUT_TOL
}

/// Evaluate `F` through a caller-chosen route, bypassing the region policy.
///
/// Useful for cross-checking routes against each other where their regions
/// overlap. The route's own convergence requirements still apply.
pub fn eval_with_strategy(
    p: &HypParams,
    t: Complex64,
    strategy: EvalStrategy,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    match strategy {
        EvalStrategy::DirectSeries | EvalStrategy::PolynomialTruncation => raw_series(p, t, ctrl),
        EvalStrategy::PfaffOnAlpha => {
            let w = t / (t - 1.0);
            let prefactor = principal_power(ONE - t, -p.alpha)?;
            Ok(prefactor * raw_series(&p.pfaff_alpha()?, w, ctrl)?)
        }
        EvalStrategy::PfaffOnBeta => {
            let w = t / (t - 1.0);
            let prefactor = principal_power(ONE - t, -p.beta)?;
            Ok(prefactor * raw_series(&p.pfaff_beta()?, w, ctrl)?)
        }
        EvalStrategy::OneMinusTConnection => one_minus_t_connection(p, t, ctrl),
        EvalStrategy::Unreachable => {
            let (direct, pfaff, one_minus) = region_moduli(t);
            Err(Error::EvaluationUnreachable {
                t,
                direct,
                pfaff,
                one_minus,
            })
        }
    }
}

fn one_minus_t_connection(p: &HypParams, t: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    use gamma::{gamma as gamma_fn, rgamma};

    let (a, b, c) = (p.alpha, p.beta, p.gamma);
    let s = ONE - t;
    let excess = c - a - b;

    let coef_first = gamma_fn(c) * gamma_fn(excess) * rgamma(c - a) * rgamma(c - b);
    let coef_second = gamma_fn(c) * gamma_fn(-excess) * rgamma(a) * rgamma(b);

    let mut value = ZERO;
    if coef_first != ZERO {
        let q = HypParams::new(a, b, ONE - excess)?;
        value += coef_first * raw_series(&q, s, ctrl)?;
    }
    if coef_second != ZERO {
        let q = HypParams::new(c - a, c - b, ONE + excess)?;
        value += coef_second * principal_power(s, excess)? * raw_series(&q, s, ctrl)?;
    }
    Ok(value)
}

/// `F(alpha, beta; gamma; t)` on the principal branch.
pub fn gauss_2f1(p: &HypParams, t: Complex64, ctrl: &SeriesControl) -> Result<Complex64> {
    let strategy = select_strategy(p, t, ctrl);
    if strategy != EvalStrategy::PolynomialTruncation && on_branch_cut(t) {
        return Err(Error::OnBranchCut { t });
    }
    eval_with_strategy(p, t, strategy, ctrl)
}

/// `dF/dt = (alpha beta / gamma) F(alpha+1, beta+1; gamma+1; t)`.
pub fn gauss_2f1_derivative(
    p: &HypParams,
    t: Complex64,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    if p.truncation_degree() == Some(0) {
        return Ok(ZERO);
    }
    if p.gamma.norm() <= INT_TOL {
        return Err(Error::DegenerateGamma { gamma: p.gamma });
    }
    let coef = p.alpha * p.beta / p.gamma;
    Ok(coef * gauss_2f1(&p.shifted(1.0)?, t, ctrl)?)
}

/// `d^2F/dt^2 = (alpha)_2 (beta)_2 / (gamma)_2 F(alpha+2, beta+2; gamma+2; t)`.
pub fn gauss_2f1_second_derivative(
    p: &HypParams,
    t: Complex64,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    if matches!(p.truncation_degree(), Some(0) | Some(1)) {
        return Ok(ZERO);
    }
    for g in [p.gamma, p.gamma + 1.0] {
        if g.norm() <= INT_TOL {
            return Err(Error::DegenerateGamma { gamma: g });
        }
    }
    let coef = p.alpha * (p.alpha + 1.0) * p.beta * (p.beta + 1.0) / (p.gamma * (p.gamma + 1.0));
    Ok(coef * gauss_2f1(&p.shifted(2.0)?, t, ctrl)?)
}

/// `(F, F', F'')` at `t`.
pub fn gauss_2f1_jet(
    p: &HypParams,
    t: Complex64,
    ctrl: &SeriesControl,
) -> Result<(Complex64, Complex64, Complex64)> {
    Ok((
        gauss_2f1(p, t, ctrl)?,
        gauss_2f1_derivative(p, t, ctrl)?,
        gauss_2f1_second_derivative(p, t, ctrl)?,
    ))
}

#[cfg(test)]
mod tests;
