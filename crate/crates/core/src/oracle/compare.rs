use num_complex::Complex64;
use serde::Serialize;

use super::integrate::{integrate_ivp, IntegrationControl};
use super::path::PathSpec;
use crate::error::{Error, Result};
use crate::hypergeom::SeriesControl;
use crate::papperitz::{eval_solution, DegeneracyClass, DerivedParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifySample {
    #[serde(serialize_with = "crate::cli::literal::serialize_complex")]
    pub z: Complex64,
    #[serde(serialize_with = "crate::cli::literal::serialize_complex")]
    pub closed_form: Complex64,
    #[serde(serialize_with = "crate::cli::literal::serialize_complex")]
    pub numeric: Complex64,
    pub abs_err: f64,
}

impl VerifySample {
    pub fn rel_err(&self) -> f64 {
        let m = self.closed_form.norm();
        if m > 0.0 {
            self.abs_err / m
        } else {
            self.abs_err
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub samples: Vec<VerifySample>,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
}

impl VerifyReport {
    pub fn from_samples(samples: Vec<VerifySample>) -> Self {
        let max_abs_err = samples.iter().map(|s| s.abs_err).fold(0.0, f64::max);
        let max_rel_err = samples
            .iter()
            .map(VerifySample::rel_err)
            .fold(0.0, f64::max);
        Self {
            samples,
            max_abs_err,
            max_rel_err,
        }
    }
}

/// Seed the integrator with the closed-form jet of `C1 y1 + C2 y2` at the
/// first waypoint and compare both sides at every waypoint.
///
/// Only generic parameter sets are accepted.
pub fn compare_closed_numeric(
    d: &DerivedParams,
    c1: Complex64,
    c2: Complex64,
    path: &PathSpec,
    ctrl: &IntegrationControl,
    series_ctrl: &SeriesControl,
) -> Result<VerifyReport> {
    if d.degeneracy != DegeneracyClass::Generic {
        return Err(Error::DegenerateBasis {
            which: "First and Second",
            class: d.degeneracy.to_string(),
        });
    }
    let start = eval_solution(d, c1, c2, path.start(), series_ctrl)?;
    let numeric = integrate_ivp(&d.params, path, start.y, start.dy, ctrl)?;
    let samples = numeric
        .iter()
        .map(|s| {
            let closed = eval_solution(d, c1, c2, s.z, series_ctrl)?.y;
            Ok(VerifySample {
                z: s.z,
                closed_form: closed,
                numeric: s.y,
                abs_err: (closed - s.y).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport::from_samples(samples))
}
