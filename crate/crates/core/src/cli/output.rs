//! Rows and documents written by `eval` and `integrate`.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::literal::{as_pair, render_complex, render_f64};
use crate::papperitz::{DerivedParams, EquationParams};

pub const CSV_HEADER: &str = "z_re,z_im,y_re,y_im,dy_re,dy_im,residual_abs";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(with = "as_pair")]
    pub z: Complex64,
    #[serde(with = "as_pair")]
    pub y: Complex64,
    #[serde(with = "as_pair")]
    pub dy: Complex64,
    pub residual_abs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsView {
    #[serde(with = "as_pair")]
    pub a: Complex64,
    #[serde(with = "as_pair")]
    pub b: Complex64,
    #[serde(with = "as_pair")]
    pub c: Complex64,
}

impl From<&EquationParams> for ParamsView {
    fn from(p: &EquationParams) -> Self {
        Self {
            a: p.a,
            b: p.b,
            c: p.c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedView {
    #[serde(with = "as_pair")]
    pub delta: Complex64,
    #[serde(with = "as_pair")]
    pub delta_star: Complex64,
    #[serde(with = "as_pair")]
    pub lambda: Complex64,
    #[serde(with = "as_pair")]
    pub lambda2: Complex64,
    #[serde(with = "as_pair")]
    pub alpha: Complex64,
    #[serde(with = "as_pair")]
    pub beta: Complex64,
    #[serde(with = "as_pair")]
    pub gamma: Complex64,
    pub degeneracy: String,
}

impl From<&DerivedParams> for DerivedView {
    fn from(d: &DerivedParams) -> Self {
        Self {
            delta: d.delta,
            delta_star: d.delta_star,
            lambda: d.lambda,
            lambda2: d.lambda2,
            alpha: d.alpha,
            beta: d.beta,
            gamma: d.gamma,
            degeneracy: d.degeneracy.to_string(),
        }
    }
}

impl DerivedView {
    fn fields(&self) -> [(&'static str, Complex64); 7] {
        [
            ("delta", self.delta),
            ("delta_star", self.delta_star),
            ("lambda", self.lambda),
            ("lambda2", self.lambda2),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub params: ParamsView,
    pub derived: DerivedView,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub params: ParamsView,
    pub derived: DerivedView,
    pub rows: Vec<Row>,
}

pub fn write_params_text(out: &mut dyn Write, doc: &ParamsDocument) -> std::io::Result<()> {
    let p = &doc.params;
    for (name, v) in [("a", p.a), ("b", p.b), ("c", p.c)] {
        writeln!(out, "{name} = {}", render_complex(v))?;
    }
    for (name, v) in doc.derived.fields() {
        writeln!(out, "{name} = {}", render_complex(v))?;
    }
    writeln!(out, "degeneracy = {}", doc.derived.degeneracy)
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

pub fn write_csv(out: &mut dyn Write, rows: &[Row]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            render_complex(r.z),
            render_complex(r.y),
            render_complex(r.dy),
            render_f64(r.residual_abs)
        )?;
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    z_re: f64,
    z_im: f64,
    y_re: f64,
    y_im: f64,
    dy_re: f64,
    dy_im: f64,
    residual_abs: f64,
}

/// Reads back what [`write_csv`] wrote.
pub fn read_csv(text: &str) -> Result<Vec<Row>, csv::Error> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize::<CsvRow>()
        .map(|r| {
            r.map(|r| Row {
                z: Complex64::new(r.z_re, r.z_im),
                y: Complex64::new(r.y_re, r.y_im),
                dy: Complex64::new(r.dy_re, r.dy_im),
                residual_abs: r.residual_abs,
            })
        })
        .collect()
}

#[derive(Debug, Deserialize)]
struct PointRow {
    z_re: f64,
    z_im: f64,
}

/// Evaluation points from a CSV file with columns `z_re,z_im`.
pub fn read_points(text: &str) -> Result<Vec<Complex64>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (i, r) in reader.deserialize::<PointRow>().enumerate() {
        let r = r.map_err(|e| format!("points row {}: {e}", i + 1))?;
        if !(r.z_re.is_finite() && r.z_im.is_finite()) {
            return Err(format!("points row {}: non-finite coordinate", i + 1));
        }
        points.push(Complex64::new(r.z_re, r.z_im));
    }
    if points.is_empty() {
        return Err("points file has no rows".into());
    }
    Ok(points)
}
