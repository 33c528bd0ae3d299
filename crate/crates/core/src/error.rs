use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong while evaluating the closed form or running
/// the numerical oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid hypergeometric parameters: gamma = {gamma} is a nonpositive integer and no upper parameter truncates the series early enough")]
    InvalidGamma { gamma: Complex64 },

    #[error("series did not converge within {max_terms} terms (argument {w})")]
    NoConvergence { w: Complex64, max_terms: usize },

    #[error("series argument {w} lies outside the unit disk and the series does not terminate")]
    OutsideUnitDisk { w: Complex64 },

    #[error(
        "no argument reduction reaches t = {t}: |t| = {direct:.6}, |t/(t-1)| = {pfaff:.6}, |1-t| = {one_minus:.6}"
    )]
    EvaluationUnreachable {
        t: Complex64,
        direct: f64,
        pfaff: f64,
        one_minus: f64,
    },

    #[error("argument t = {t} lies on the branch cut [1, inf)")]
    OnBranchCut { t: Complex64 },

    #[error("derivative undefined: gamma = {gamma} is zero")]
    DegenerateGamma { gamma: Complex64 },

    #[error("z = {z} is the pole z = -i of the map z -> t")]
    PoleAtMinusI { z: Complex64 },

    #[error("t = {t} is the pole t = 1 of the map t -> z")]
    PoleAtOne { t: Complex64 },

    #[error("zero base raised to exponent {exponent} with nonpositive real part")]
    ZeroBaseNonpositiveExponent { exponent: Complex64 },

    #[error("basis member {which} is not available for degeneracy class {class}")]
    DegenerateBasis { which: &'static str, class: String },

    #[error("Wronskian {wronskian:e} is too small relative to {scale:e}; the basis is not independent at this point")]
    DegenerateWronskian { wronskian: f64, scale: f64 },

    #[error("segment {segment} passes within {distance:.6} of the singular point {point} (minimum {min})")]
    PathTooCloseToSingularity {
        segment: usize,
        point: Complex64,
        distance: f64,
        min: f64,
    },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("step limit {max_steps} exceeded at z = {z}")]
    StepLimitExceeded { z: Complex64, max_steps: usize },

    #[error("equation parameter {name} = {value} is not finite")]
    NonFiniteParameter {
        name: &'static str,
        value: Complex64,
    },

    #[error("invalid control setting: {0}")]
    InvalidControl(String),
}

impl Error {
    /// True for errors meaning "this point cannot be evaluated" (poles,
    /// branch cuts, unreachable regions, paths grazing a singularity).
    pub fn is_unreachable_point(&self) -> bool {
        matches!(
            self,
            Error::EvaluationUnreachable { .. }
                | Error::OnBranchCut { .. }
                | Error::PoleAtMinusI { .. }
                | Error::PoleAtOne { .. }
                | Error::ZeroBaseNonpositiveExponent { .. }
                | Error::PathTooCloseToSingularity { .. }
        )
    }

    /// True for errors meaning the parameters are outside the generic case
    /// that the two-term closed form covers.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::DegenerateBasis { .. }
                | Error::DegenerateWronskian { .. }
                | Error::InvalidGamma { .. }
                | Error::DegenerateGamma { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
