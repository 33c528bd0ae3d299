//! Complex literals: `"RE,IM"` on the command line and in CSV, `[re, im]` in JSON.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LiteralError {
    #[error("expected RE,IM, got {0:?}")]
    Shape(String),
    #[error("cannot parse {part:?} in {input:?} as a number")]
    Number { input: String, part: String },
    #[error("non-finite component in {0:?}")]
    NonFinite(String),
}

fn parse_component(input: &str, part: &str) -> Result<f64, LiteralError> {
    let v: f64 = part.trim().parse().map_err(|_| LiteralError::Number {
        input: input.to_string(),
        part: part.to_string(),
    })?;
    if !v.is_finite() {
        return Err(LiteralError::NonFinite(input.to_string()));
    }
    Ok(v)
}

pub fn parse_complex(s: &str) -> Result<Complex64, LiteralError> {
    let mut parts = s.split(',');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(re), Some(im), None) => Ok(Complex64::new(
            parse_component(s, re)?,
            parse_component(s, im)?,
        )),
        _ => Err(LiteralError::Shape(s.to_string())),
    }
}

/// Shortest text that parses back to the same `f64`.
pub fn render_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn render_complex(z: Complex64) -> String {
    format!("{},{}", render_f64(z.re), render_f64(z.im))
}

/// `"z0;z1;..."`.
pub fn parse_path(s: &str) -> Result<Vec<Complex64>, LiteralError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_complex)
        .collect()
}

pub fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

pub fn deserialize_complex<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    let [re, im] = <[f64; 2]>::deserialize(d)?;
    Ok(Complex64::new(re, im))
}

/// For `#[serde(with = "as_pair")]`.
pub mod as_pair {
    pub use super::{deserialize_complex as deserialize, serialize_complex as serialize};
}
