use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_MIN_SINGULARITY_DISTANCE: f64 = 0.1;

const SINGULAR_POINTS: [Complex64; 2] = [Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];

/// Distance from `p` to the closed segment `[a, b]`.
pub fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    // projection parameter of p onto the line through a and b
    let s = ((p - a) * ab.conj()).re / len2;
    let s = s.clamp(0.0, 1.0);
    (a + ab * s - p).norm()
}

/// A polyline in the z-plane that stays clear of `z = +-i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSpec {
    waypoints: Vec<Complex64>,
    min_singularity_distance: f64,
}

impl PathSpec {
    pub fn new(waypoints: Vec<Complex64>, min_singularity_distance: f64) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidPath(format!(
                "need at least 2 waypoints, got {}",
                waypoints.len()
            )));
        }
        if min_singularity_distance.is_nan() || min_singularity_distance <= 0.0 {
            return Err(Error::InvalidPath(format!(
                "minimum singularity distance must be positive, got {min_singularity_distance}"
            )));
        }
        if let Some(w) = waypoints
            .iter()
            .find(|w| !w.re.is_finite() || !w.im.is_finite())
        {
            return Err(Error::InvalidPath(format!("non-finite waypoint {w}")));
        }
        for (segment, pair) in waypoints.windows(2).enumerate() {
            for point in SINGULAR_POINTS {
                let distance = segment_distance(pair[0], pair[1], point);
                if distance < min_singularity_distance {
                    return Err(Error::PathTooCloseToSingularity {
                        segment,
                        point,
                        distance,
                        min: min_singularity_distance,
                    });
                }
            }
        }
        Ok(Self {
            waypoints,
            min_singularity_distance,
        })
    }

    /// Path with the default exclusion radius of 0.1.
    pub fn with_default_radius(waypoints: Vec<Complex64>) -> Result<Self> {
        Self::new(waypoints, DEFAULT_MIN_SINGULARITY_DISTANCE)
    }

    pub fn waypoints(&self) -> &[Complex64] {
        &self.waypoints
    }

    pub fn min_singularity_distance(&self) -> f64 {
        self.min_singularity_distance
    }

    pub fn start(&self) -> Complex64 {
        self.waypoints[0]
    }
}
