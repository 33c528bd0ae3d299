//! The `papperitz` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 degenerate parameters,
//! 3 unreachable point or bad path geometry, 4 verification failure.

pub mod literal;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::hypergeom::SeriesControl;
use crate::jet::ZJet;
use crate::oracle::{
    compare_closed_numeric, integrate_ivp, residual_scale_z, residual_z, second_derivative,
    IntegrationControl, PathSpec,
};
use crate::papperitz::{eval_solution, DegeneracyClass, DerivedParams, EquationParams};
use crate::suites::{self, Deriver, SuiteConfig, DEFAULT_SEED};
use literal::{parse_complex, parse_path, render_f64};
use output::{DerivedView, Document, ParamsDocument, ParamsView, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_UNREACHABLE: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "papperitz",
    version,
    about = "Closed-form and numerical solutions of (1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct EqArgs {
    /// RE,IM
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    a: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    b: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c: Complex64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derived exponents, hypergeometric parameters and degeneracy class.
    Params {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate C1 y1 + C2 y2 at one point or at every row of a CSV file.
    Eval {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c1: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        c2: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "points", required_unless_present = "points")]
        z: Option<Complex64>,
        /// CSV file with columns z_re,z_im
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Compare the closed form with the numerical integrator.
    Verify {
        #[command(flatten)]
        eq: EqArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Integrate an initial value problem along a polyline.
    Integrate {
        #[command(flatten)]
        eq: EqArgs,
        /// "z0;z1;..." with each point as RE,IM
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        y0: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        dy0: Complex64,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
    /// Run the seeded verification suites.
    Selftest {
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_degenerate() {
        EXIT_DEGENERATE
    } else if e.is_unreachable_point() {
        EXIT_UNREACHABLE
    } else {
        match e {
            Error::InvalidPath(_) | Error::InvalidControl(_) | Error::NonFiniteParameter { .. } => {
                EXIT_USAGE
            }
            _ => EXIT_VERIFY_FAILED,
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("write failed: {e}"))
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(args, out, err, suites::default_deriver())
}

/// [`run`] with the parameter derivation replaced, so a broken derivation
/// can be pushed through the same commands.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write, derive: Deriver) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, derive) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn equation(eq: &EqArgs) -> Result<EquationParams, Failure> {
    Ok(EquationParams::new(eq.a, eq.b, eq.c)?)
}

fn dispatch(cmd: Command, out: &mut dyn Write, derive: Deriver) -> Result<i32, Failure> {
    let ctrl = SeriesControl::default();
    match cmd {
        Command::Params { eq, json } => {
            let p = equation(&eq)?;
            let d = derive(&p);
            let doc = ParamsDocument {
                params: ParamsView::from(&p),
                derived: DerivedView::from(&d),
            };
            if json {
                output::write_json(out, &doc)?;
            } else {
                output::write_params_text(out, &doc)?;
            }
            Ok(EXIT_OK)
        }
        Command::Eval {
            eq,
            c1,
            c2,
            z,
            points,
            format,
        } => {
            let p = equation(&eq)?;
            let d = derive(&p);
            let zs = match (z, points) {
                (Some(z), _) => vec![z],
                (None, Some(file)) => {
                    let text = std::fs::read_to_string(&file).map_err(|e| {
                        Failure::usage(format!("cannot read {}: {e}", file.display()))
                    })?;
                    output::read_points(&text).map_err(Failure::usage)?
                }
                (None, None) => return Err(Failure::usage("one of --z or --points is required")),
            };
            let mut rows = Vec::with_capacity(zs.len());
            for z in zs {
                let j = eval_solution(&d, c1, c2, z, &ctrl).map_err(|e| point_failure(e, z))?;
                rows.push(row(&p, z, &j));
            }
            emit(out, format, &p, &d, rows)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            eq,
            samples,
            tol,
            seed,
        } => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Failure::usage(format!("--tol must be positive, got {tol}")));
            }
            let p = equation(&eq)?;
            verify(out, &p, derive, samples, tol, seed, &ctrl)
        }
        Command::Integrate {
            eq,
            path,
            y0,
            dy0,
            out: format,
        } => {
            let p = equation(&eq)?;
            let waypoints =
                parse_path(&path).map_err(|e| Failure::usage(format!("--path: {e}")))?;
            let path = PathSpec::with_default_radius(waypoints)?;
            let samples = integrate_ivp(&p, &path, y0, dy0, &IntegrationControl::default())?;
            let rows = samples
                .iter()
                .map(|s| {
                    row(
                        &p,
                        s.z,
                        &ZJet::new(s.y, s.dy, second_derivative(&p, s.z, s.y, s.dy)),
                    )
                })
                .collect();
            emit(out, format, &p, &derive(&p), rows)?;
            Ok(EXIT_OK)
        }
        Command::Selftest { quick, seed } => {
            let cfg = SuiteConfig { seed, quick };
            let reports = suites::run_all(&cfg, derive);
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            let ok = reports.iter().all(|r| r.ok());
            writeln!(out, "selftest: {}", if ok { "PASS" } else { "FAIL" })?;
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn point_failure(e: Error, z: Complex64) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("at z = {}: {}", literal::render_complex(z), f.message);
    f
}

fn row(p: &EquationParams, z: Complex64, j: &ZJet) -> Row {
    Row {
        z,
        y: j.y,
        dy: j.dy,
        residual_abs: residual_z(p, j, z).norm(),
    }
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    p: &EquationParams,
    d: &DerivedParams,
    rows: Vec<Row>,
) -> Result<(), Failure> {
    match format {
        Format::Csv => output::write_csv(out, &rows)?,
        Format::Json => output::write_json(
            out,
            &Document {
                params: ParamsView::from(p),
                derived: DerivedView::from(d),
                rows,
            },
        )?,
    }
    Ok(())
}

/// Both basis members against the integrator along the standard path, and
/// scaled residuals at `samples` seeded points.
fn verify(
    out: &mut dyn Write,
    p: &EquationParams,
    derive: Deriver,
    samples: usize,
    tol: f64,
    seed: u64,
    ctrl: &SeriesControl,
) -> Result<i32, Failure> {
    let d = derive(p);
    if d.degeneracy != DegeneracyClass::Generic {
        return Err(Failure {
            code: EXIT_DEGENERATE,
            message: format!("degeneracy class {} has no two-member basis", d.degeneracy),
        });
    }
    let d = DerivedParams { params: *p, ..d };
    let path = suites::standard_path();
    let ictrl = IntegrationControl::default();
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    for (c1, c2) in [(1.0, 0.0), (0.0, 1.0)] {
        let rep = compare_closed_numeric(&d, c1.into(), c2.into(), &path, &ictrl, ctrl)?;
        max_abs = max_abs.max(rep.max_abs_err);
        max_rel = max_rel.max(rep.max_rel_err);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_res: f64 = 0.0;
    for _ in 0..samples {
        let (z, y1, y2) = suites::reachable_point(&mut rng, &d, ctrl)?;
        for j in [y1, y2] {
            max_res = max_res.max(residual_z(p, &j, z).norm() / residual_scale_z(&j, z));
        }
    }
    writeln!(out, "max_abs_err = {}", render_f64(max_abs))?;
    writeln!(out, "max_rel_err = {}", render_f64(max_rel))?;
    writeln!(out, "max_scaled_residual = {}", render_f64(max_res))?;
    writeln!(out, "samples = {samples}")?;
    writeln!(out, "tol = {}", render_f64(tol))?;
    let ok = max_rel <= tol && max_res <= tol;
    writeln!(out, "verify: {}", if ok { "PASS" } else { "FAIL" })?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
