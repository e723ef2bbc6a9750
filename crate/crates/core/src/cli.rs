//! Command-line front end.
//!
//! Exit codes: 0 success (elliptic, coercive, all checks passed), 1 error,
//! 2 field not elliptic, 3 not certified coercive, 4 verification failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::certify::{certify, scan_angles, CertifyOptions, XiMinus, DEFAULT_GRID};
use crate::coercivity::{Breakdown, Problem, Verdict};
use crate::error::{Error, Result};
use crate::field::{MaterialField, SampledField};
use crate::media::CatalogModel;
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_ELLIPTIC: i32 = 2;
pub const EXIT_NOT_COERCIVE: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "elliptic-media",
    version,
    about = "Ellipticity and coercivity certificates for complex material fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output file (written atomically); standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Scan resolution for numeric Θ-sets and curves.
    #[arg(long, global = true, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    /// Seed for the randomized oracles of `verify`.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Present angles in degrees (computation stays in radians).
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify one field: Θ-set, constants, method and witnesses.
    Certify {
        #[arg(long, short)]
        input: PathBuf,
        /// Skip the closed forms and scan numerically.
        #[arg(long)]
        force_numeric: bool,
    },
    /// Θ-set of a field and its ξ₋(θ) curve.
    Theta {
        #[arg(long, short)]
        input: PathBuf,
    },
    /// Coercivity analysis of a problem file.
    Coercivity {
        #[arg(long, short)]
        input: PathBuf,
        /// Also write the c(θ) curve as CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long = "assert-geometry-I")]
        assert_geometry_i: bool,
        #[arg(long = "assert-geometry-II")]
        assert_geometry_ii: bool,
        #[arg(long)]
        assert_alpha_regularity: bool,
    },
    /// Catalog of parametric media.
    Media {
        #[command(subcommand)]
        action: MediaAction,
    },
    /// Run the seeded oracle suite.
    Verify {
        /// Flip a closed-form sign to check that failures are detected.
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MediaAction {
    /// Model ids, quantities and parameter schemas.
    List,
    /// Field definition of one model.
    Emit {
        model: String,
        #[arg(long, short)]
        quantity: Option<String>,
        /// Parameters as inline JSON; the model's example when absent.
        #[arg(long, conflicts_with = "input")]
        params: Option<String>,
        /// Parameters from a JSON file.
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// Emit the sampled tensors instead of the parametric definition.
        #[arg(long)]
        materialize: bool,
    },
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn execute(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    if g.grid < 16 {
        return Err(Error::Domain(format!(
            "--grid must be at least 16, got {}",
            g.grid
        )));
    }
    let copts = CertifyOptions {
        grid: g.grid,
        force_numeric: false,
    };
    match &cli.command {
        Command::Certify {
            input,
            force_numeric,
        } => {
            let field = load_field(input)?;
            let opts = CertifyOptions {
                force_numeric: *force_numeric,
                ..copts
            };
            let cert = certify(&field, &opts)?;
            let text = match g.format {
                Format::Json => json_text(serde_json::to_value(&cert)?, g.degrees),
                Format::Csv => arcs_csv(&serde_json::to_value(&cert.theta_set)?, g.degrees),
            };
            emit(g, &text)?;
            Ok(if cert.is_elliptic() {
                EXIT_OK
            } else {
                EXIT_NOT_ELLIPTIC
            })
        }
        Command::Theta { input } => {
            let field = load_field(input)?;
            let cert = certify(&field, &copts)?;
            let eval = XiMinus::new(&field)?;
            let curve: Vec<(f64, f64)> = scan_angles(g.grid)
                .into_iter()
                .map(|t| (t, eval.eval(t)))
                .collect();
            let text = match g.format {
                Format::Json => {
                    let v = json!({
                        "field": field.name,
                        "theta_set": cert.theta_set,
                        "method": cert.method,
                        "curve": curve
                            .iter()
                            .map(|&(theta, xi)| json!({
                                "theta": theta,
                                "xi_minus": xi,
                                "in_set": cert.theta_set.contains(theta),
                            }))
                            .collect::<Vec<_>>(),
                    });
                    json_text(v, g.degrees)
                }
                Format::Csv => {
                    let mut s = String::from("theta,xi_minus,in_set\n");
                    for (t, xi) in curve {
                        let shown = angle(t, g.degrees);
                        let inside = cert.theta_set.contains(t);
                        writeln!(s, "{shown:.16e},{xi:.16e},{inside}").unwrap();
                    }
                    s
                }
            };
            emit(g, &text)?;
            Ok(EXIT_OK)
        }
        Command::Coercivity {
            input,
            curve,
            assert_geometry_i,
            assert_geometry_ii,
            assert_alpha_regularity,
        } => {
            let mut problem = Problem::from_path(input, &copts).map_err(in_file(input))?;
            problem.assertions.geometry_i |= *assert_geometry_i;
            problem.assertions.geometry_ii |= *assert_geometry_ii;
            problem.assertions.alpha_regularity |= *assert_alpha_regularity;
            let report = problem.report();
            let rows = || curve_csv(&problem.curve(g.grid), g.degrees);
            let text = match g.format {
                Format::Json => json_text(serde_json::to_value(&report)?, g.degrees),
                Format::Csv => rows(),
            };
            if let Some(path) = curve {
                write_atomic(path, &rows())?;
            }
            emit(g, &text)?;
            if report.verdict != Verdict::Coercive {
                eprintln!("{}", report.verdict_text);
            }
            Ok(if report.verdict == Verdict::Coercive {
                EXIT_OK
            } else {
                EXIT_NOT_COERCIVE
            })
        }
        Command::Media { action } => {
            let text = match action {
                MediaAction::List => media_list(g.format),
                MediaAction::Emit {
                    model,
                    quantity,
                    params,
                    input,
                    materialize,
                } => {
                    let model = CatalogModel::from_id(model)?;
                    let params: Value = match (params, input) {
                        (Some(p), _) => serde_json::from_str(p)?,
                        (None, Some(path)) => read_json(path)?,
                        (None, None) => model.example_params(),
                    };
                    let name = format!(
                        "{}_{}",
                        model.id(),
                        quantity.as_deref().unwrap_or(model.quantities()[0])
                    );
                    let def =
                        MaterialField::parametric(name, model, quantity.as_deref(), params, None)?;
                    let field = def.materialize()?;
                    let out = if *materialize {
                        field.to_definition()
                    } else {
                        def
                    };
                    json_text(serde_json::to_value(&out)?, false)
                }
            };
            emit(g, &text)?;
            Ok(EXIT_OK)
        }
        Command::Verify { perturb } => {
            let report = verify::run(&VerifyOptions {
                seed: g.seed,
                grid: g.grid,
                perturb: *perturb,
            });
            let text = match g.format {
                Format::Json => report.to_json(),
                Format::Csv => {
                    let mut s = String::from("criterion,name,cases,failures,passed\n");
                    for c in &report.checks {
                        writeln!(
                            s,
                            "{},{},{},{},{}",
                            c.criterion,
                            c.name,
                            c.cases,
                            c.failures,
                            c.passed()
                        )
                        .unwrap();
                    }
                    s
                }
            };
            emit(g, &text)?;
            eprintln!("verify: {} passed, {} failed", report.passed, report.failed);
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

fn load_field(path: &Path) -> Result<SampledField> {
    MaterialField::from_path(path)
        .map_err(in_file(path))?
        .materialize()
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| in_file(path)(e.into()))?;
    serde_json::from_str(&text).map_err(|e| in_file(path)(e.into()))
}

/// Names the file in parse and I/O errors.
fn in_file(path: &Path) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{message} (in {})", path.display()),
        },
        Error::Io(io) => Error::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", path.display()),
        )),
        other => other,
    }
}

fn media_list(format: Format) -> String {
    match format {
        Format::Json => {
            let models: Vec<Value> = CatalogModel::ALL
                .iter()
                .map(|m| {
                    json!({
                        "id": m.id(),
                        "quantities": m.quantities(),
                        "schema": m.schema(),
                    })
                })
                .collect();
            json_text(Value::Array(models), false)
        }
        Format::Csv => {
            let mut s = String::from("id,quantities\n");
            for m in CatalogModel::ALL {
                writeln!(s, "{},{}", m.id(), m.quantities().join(";")).unwrap();
            }
            s
        }
    }
}

fn angle(theta: f64, degrees: bool) -> f64 {
    if degrees {
        theta.to_degrees()
    } else {
        theta
    }
}

/// Keys whose numeric values are angles in every report.
const ANGLE_KEYS: [&str; 7] = [
    "start",
    "end",
    "theta",
    "best_direction",
    "phase_range",
    "theta_star",
    "plateau_width",
];

fn to_degrees(v: &mut Value, is_angle: bool) {
    match v {
        Value::Number(n) if is_angle => {
            if let Some(x) = n.as_f64() {
                *v = json!(x.to_degrees());
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| to_degrees(x, is_angle)),
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                to_degrees(x, ANGLE_KEYS.contains(&k.as_str()));
            }
        }
        _ => {}
    }
}

fn json_text(mut v: Value, degrees: bool) -> String {
    if degrees {
        to_degrees(&mut v, false);
        if let Value::Object(map) = &mut v {
            map.insert("angle_unit".into(), json!("degrees"));
        }
    }
    let mut s = serde_json::to_string_pretty(&v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn arcs_csv(presented: &Value, degrees: bool) -> String {
    let mut s = String::from("start,end,start_closed,end_closed\n");
    for p in presented.as_array().into_iter().flatten() {
        let num = |k: &str| angle(p[k].as_f64().unwrap_or(f64::NAN), degrees);
        writeln!(
            s,
            "{:.16e},{:.16e},{},{}",
            num("start"),
            num("end"),
            p["start_closed"],
            p["end_closed"]
        )
        .unwrap();
    }
    s
}

/// `theta,curl,mass,boundary,c`; `boundary` is empty without a Robin term.
pub fn curve_csv(rows: &[Breakdown], degrees: bool) -> String {
    let mut s = String::from("theta,curl,mass,boundary,c\n");
    for b in rows {
        let boundary = b
            .boundary_term
            .map(|x| format!("{x:.16e}"))
            .unwrap_or_default();
        writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{},{:.16e}",
            angle(b.theta, degrees),
            b.curl_term,
            b.mass_term,
            boundary,
            b.c
        )
        .unwrap();
    }
    s
}

fn emit(g: &GlobalArgs, text: &str) -> Result<()> {
    match &g.output {
        Some(path) => write_atomic(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Writes through a temporary file in the target directory, so a failed run
/// never leaves a partial file behind.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}
