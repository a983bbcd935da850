//! Command-line driver for `torickps`.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! together with the JSON text to print. Exit codes: 0 on success, 1 on a domain
//! error (reported as `{"error": kind, "message": ...}`), 2 on unreadable or
//! malformed input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use torickps::kstability::{construct_standard_boundary, is_k_polystable, KpsReport};
use torickps::logcox::{local_chart, log_class_group, rank1_report, LocalChart, LogClassGroup};
use torickps::toricdiv::{dual_vertices, find_ample, polytope_of, StandardBoundary, ToricDivisor};
use torickps::{Fan, VPolytope};

pub mod schema;

use schema::{ParseError, Polytope};

#[derive(Debug, Parser)]
#[command(name = "torickps", version, about = "Exact K-polystability checks for toric pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to FILE instead of standard output.
    #[arg(short = 'o', global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Add decimal renderings next to exact rational values.
    #[arg(long, global = true)]
    pub approx: bool,
}

#[derive(Debug, Args)]
pub struct FanArg {
    #[arg(long, value_name = "FILE")]
    pub fan: PathBuf,
}

#[derive(Debug, Args)]
pub struct FanBoundary {
    #[arg(long, value_name = "FILE")]
    pub fan: PathBuf,
    /// Ramification indices; omitted means the empty boundary.
    #[arg(long, value_name = "FILE")]
    pub boundary: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// K-polystability of (X, Delta) by the barycenter criterion.
    Check(FanBoundary),
    /// Standard-coefficient boundary making X K-polystable, from an ample divisor.
    Boundary {
        #[arg(long, value_name = "FILE")]
        fan: PathBuf,
        /// Ample divisor; one is found by linear programming if omitted.
        #[arg(long, value_name = "FILE")]
        ample: Option<PathBuf>,
    },
    /// The equivalent Picard-rank-one conditions with their witnesses.
    Rank1(FanBoundary),
    /// Log class group and the degrees of the log Cox variables.
    Classgroup(FanBoundary),
    /// Orbifold charts of maximal cones (or of a single cone).
    Charts {
        #[command(flatten)]
        input: FanBoundary,
        #[arg(long, value_name = "i,j,...")]
        cone: Option<String>,
    },
    /// Polar dual of a polytope, or conv(m_rho u_rho) of a pair.
    Dual {
        #[arg(long, value_name = "FILE", conflicts_with = "fan")]
        polytope: Option<PathBuf>,
        #[arg(long, value_name = "FILE", required_unless_present = "polytope")]
        fan: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "fan")]
        boundary: Option<PathBuf>,
    },
    /// Exact volume and barycenter of a polytope or of P_L.
    Barycenter {
        #[arg(long, value_name = "FILE", conflicts_with = "fan")]
        polytope: Option<PathBuf>,
        #[arg(long, value_name = "FILE", required_unless_present = "polytope", requires = "ample")]
        fan: Option<PathBuf>,
        #[arg(long, value_name = "FILE", requires = "fan")]
        ample: Option<PathBuf>,
    },
    /// An ample divisor on a complete simplicial fan.
    FindAmple(FanArg),
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    /// Text for standard output (empty when the report went to `-o`).
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Parse(String),
    Domain(torickps::Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.0)
    }
}

impl From<torickps::Error> for Failure {
    fn from(e: torickps::Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read_doc(path: &Path) -> Res<Value> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{shown}: {e}")))?;
    Ok(schema::parse_document(&text, &shown)?)
}

fn load_fan(path: &Path) -> Res<Fan> {
    Ok(schema::fan(&read_doc(path)?)?)
}

fn load_boundary(path: Option<&PathBuf>, fan: &Fan) -> Res<StandardBoundary> {
    match path {
        Some(p) => Ok(schema::boundary(&read_doc(p)?)?),
        None => Ok(StandardBoundary::trivial(fan.num_rays())),
    }
}

fn load_divisor(path: &Path) -> Res<ToricDivisor> {
    Ok(schema::divisor(&read_doc(path)?)?)
}

fn load_vpolytope(path: &Path) -> Res<VPolytope> {
    Ok(match schema::polytope(&read_doc(path)?)? {
        Polytope::H(h) => h.vertices()?,
        Polytope::V(v) => VPolytope::from_points(v.dim(), v.vertices().to_vec())?,
    })
}

fn kps_json(r: &KpsReport, approx: bool) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("is_log_fano".into(), json!(r.is_log_fano));
    out.insert("k_polystable".into(), json!(r.is_k_polystable));
    out.insert("barycenter".into(), r.barycenter.as_deref().map_or(Value::Null, schema::rats_json));
    if approx {
        if let Some(b) = &r.barycenter {
            schema::add_approx(&mut out, "barycenter", b);
        }
    }
    out
}

fn class_group_json(cl: &LogClassGroup) -> Map<String, Value> {
    let degrees: Vec<Value> = cl
        .degrees
        .iter()
        .map(|d| json!({ "free": schema::ints_json(&d.free), "torsion": schema::ints_json(&d.torsion) }))
        .collect();
    let mut out = Map::new();
    out.insert("cl".into(), schema::group_json(&cl.group));
    out.insert("degrees".into(), Value::Array(degrees));
    out
}

fn chart_json(c: &LocalChart) -> Value {
    json!({ "cone": c.cone, "group": schema::group_json(&c.group), "orders": schema::ints_json(&c.orders) })
}

fn polytope_summary(p: &VPolytope, approx: bool) -> Res<Value> {
    let volume = p.volume()?;
    let barycenter = p.barycenter()?;
    let mut out = Map::new();
    out.insert("polytope".into(), schema::vpolytope_json(p));
    out.insert("volume".into(), schema::rat_json(&volume));
    out.insert("barycenter".into(), schema::rats_json(&barycenter));
    if approx {
        schema::add_approx(&mut out, "barycenter", &barycenter);
        schema::add_approx(&mut out, "volume", std::slice::from_ref(&volume));
    }
    Ok(Value::Object(out))
}

fn execute(cli: &Cli) -> Res<Value> {
    let approx = cli.approx;
    match &cli.command {
        Command::Check(io) => {
            let fan = load_fan(&io.fan)?;
            let b = load_boundary(io.boundary.as_ref(), &fan)?;
            Ok(Value::Object(kps_json(&is_k_polystable(&fan, &b)?, approx)))
        }
        Command::Boundary { fan, ample } => {
            let fan = load_fan(fan)?;
            let l = match ample {
                Some(p) => load_divisor(p)?,
                None => find_ample(&fan)?,
            };
            let c = construct_standard_boundary(&fan, &l)?;
            let mut out = kps_json(&c.report, approx);
            out.insert("ample".into(), schema::rats_json(l.coeffs()));
            out.insert("u_b".into(), schema::rats_json(&c.u_b));
            out.insert("b".into(), schema::rats_json(&c.b));
            out.insert("l".into(), schema::int_json(&c.l));
            out.insert("m".into(), schema::ints_json(c.boundary.m()));
            if approx {
                schema::add_approx(&mut out, "u_b", &c.u_b);
                schema::add_approx(&mut out, "b", &c.b);
            }
            Ok(Value::Object(out))
        }
        Command::Rank1(io) => {
            let fan = load_fan(&io.fan)?;
            let b = load_boundary(io.boundary.as_ref(), &fan)?;
            let r = rank1_report(&fan, &b)?;
            let mut out = class_group_json(&r.class_group);
            out.insert("pi1_orb".into(), schema::group_json(&r.cover.pi1_orb));
            out.insert("cover_cone".into(), json!(r.cover.cone));
            out.insert("cover_matrix".into(), schema::int_mat_json(&r.cover.matrix));
            out.insert("conditions".into(), json!({ "c2": r.c2, "c3": r.c3, "c4": r.c4 }));
            out.insert("barycenter".into(), r.kps.barycenter.as_deref().map_or(Value::Null, schema::rats_json));
            Ok(Value::Object(out))
        }
        Command::Classgroup(io) => {
            let fan = load_fan(&io.fan)?;
            let b = load_boundary(io.boundary.as_ref(), &fan)?;
            Ok(Value::Object(class_group_json(&log_class_group(&fan, &b)?)))
        }
        Command::Charts { input, cone } => {
            let fan = load_fan(&input.fan)?;
            let b = load_boundary(input.boundary.as_ref(), &fan)?;
            let cones = match cone {
                Some(text) => vec![schema::cone(text)?],
                None => fan.max_cones().to_vec(),
            };
            let charts = cones.iter().map(|c| Ok(chart_json(&local_chart(&fan, &b, c)?))).collect::<Res<Vec<_>>>()?;
            Ok(json!({ "charts": charts }))
        }
        Command::Dual { polytope, fan, boundary } => {
            let dual = match (polytope, fan) {
                (Some(p), _) => load_vpolytope(p)?.polar_dual()?,
                (None, Some(f)) => {
                    let fan = load_fan(f)?;
                    let b = load_boundary(boundary.as_ref(), &fan)?;
                    dual_vertices(&fan, &b)?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let mut out = Map::new();
            out.insert("polytope".into(), schema::vpolytope_json(&dual));
            out.insert("facets".into(), schema::hpolytope_json(&dual.facets()?));
            Ok(Value::Object(out))
        }
        Command::Barycenter { polytope, fan, ample } => {
            let p = match (polytope, fan, ample) {
                (Some(p), _, _) => load_vpolytope(p)?,
                (None, Some(f), Some(a)) => {
                    let fan = load_fan(f)?;
                    polytope_of(&fan, &load_divisor(a)?)?.vertices()?
                }
                _ => unreachable!("clap requires one input"),
            };
            polytope_summary(&p, approx)
        }
        Command::FindAmple(io) => Ok(schema::divisor_json(&find_ample(&load_fan(&io.fan)?)?)),
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (code, body, message) = match execute(&cli) {
        Ok(v) => (0, render(&v), String::new()),
        Err(Failure::Domain(e)) => {
            let msg = e.to_string();
            (1, render(&json!({ "error": e.kind(), "message": msg })), msg)
        }
        Err(Failure::Parse(msg)) => (2, render(&json!({ "error": "ParseError", "message": msg })), msg),
    };
    match (&cli.output, code) {
        (Some(path), 0) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("{}: {e}\n", path.display()) },
        },
        _ => Outcome { code, stdout: body, stderr: if message.is_empty() { message } else { message + "\n" } },
    }
}
