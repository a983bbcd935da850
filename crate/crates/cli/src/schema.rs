//! JSON input parsing and exact output encoding.
//!
//! Integers are JSON numbers of any size; rationals are strings `"p/q"` or `"p"`
//! (plain JSON integers are accepted on input too).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value};
use torickps::exactlin::{format_rational, parse_rational, FinAbGroup};
use torickps::polytope::Halfspace;
use torickps::toricdiv::{StandardBoundary, ToricDivisor};
use torickps::{Fan, HPolytope, IntMat, Rat, VPolytope};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(pub String);

type PResult<T> = std::result::Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> PResult<T> {
    Err(ParseError(msg.into()))
}

fn field<'a>(obj: &'a Value, key: &str) -> PResult<&'a Value> {
    obj.get(key).ok_or_else(|| ParseError(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> PResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| ParseError(format!("{what}: expected an array")))
}

fn int(v: &Value, what: &str) -> PResult<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return err(format!("{what}: expected an integer")),
    };
    BigInt::from_str(text.trim()).map_err(|_| ParseError(format!("{what}: \"{text}\" is not an integer")))
}

fn index(v: &Value, what: &str) -> PResult<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| ParseError(format!("{what}: expected a nonnegative index")))
}

fn rational(v: &Value, what: &str) -> PResult<Rat> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return err(format!("{what}: expected a rational \"p/q\"")),
    };
    parse_rational(&text).ok_or_else(|| ParseError(format!("{what}: \"{text}\" is not a rational")))
}

fn int_vec(v: &Value, what: &str) -> PResult<Vec<BigInt>> {
    array(v, what)?.iter().map(|x| int(x, what)).collect()
}

fn rat_vec(v: &Value, what: &str) -> PResult<Vec<Rat>> {
    array(v, what)?.iter().map(|x| rational(x, what)).collect()
}

fn dim(doc: &Value) -> PResult<usize> {
    index(field(doc, "dim")?, "dim")
}

pub fn parse_document(text: &str, path: &str) -> PResult<Value> {
    serde_json::from_str(text).map_err(|e| ParseError(format!("{path}: {e}")))
}

pub fn fan(doc: &Value) -> PResult<Fan> {
    let n = dim(doc)?;
    let rays = array(field(doc, "rays")?, "rays")?.iter().map(|r| int_vec(r, "rays")).collect::<PResult<_>>()?;
    let cones = array(field(doc, "max_cones")?, "max_cones")?
        .iter()
        .map(|c| array(c, "max_cones")?.iter().map(|i| index(i, "max_cones")).collect())
        .collect::<PResult<_>>()?;
    Fan::new(n, rays, cones).map_err(|e| ParseError(format!("fan: {e}")))
}

pub fn divisor(doc: &Value) -> PResult<ToricDivisor> {
    Ok(ToricDivisor::new(rat_vec(field(doc, "coeffs")?, "coeffs")?))
}

pub fn boundary(doc: &Value) -> PResult<StandardBoundary> {
    StandardBoundary::new(int_vec(field(doc, "m")?, "m")?).map_err(|e| ParseError(format!("boundary: {e}")))
}

pub enum Polytope {
    V(VPolytope),
    H(HPolytope),
}

pub fn polytope(doc: &Value) -> PResult<Polytope> {
    let n = dim(doc)?;
    if let Some(ineqs) = doc.get("ineqs") {
        let hs = array(ineqs, "ineqs")?
            .iter()
            .map(|h| Ok(Halfspace::new(rat_vec(field(h, "normal")?, "normal")?, rational(field(h, "rhs")?, "rhs")?)))
            .collect::<PResult<_>>()?;
        return HPolytope::new(n, hs).map(Polytope::H).map_err(|e| ParseError(format!("polytope: {e}")));
    }
    let pts = array(field(doc, "vertices")?, "vertices")?
        .iter()
        .map(|p| rat_vec(p, "vertices"))
        .collect::<PResult<Vec<_>>>()?;
    if pts.iter().any(|p| p.len() != n) {
        return err(format!("vertices: every point must have {n} coordinates"));
    }
    // Pruning and emptiness are domain questions, so they are left to the caller.
    Ok(Polytope::V(VPolytope::from_vertices_unchecked(n, pts)))
}

/// Comma-separated ray indices, e.g. `"0,2"`.
pub fn cone(text: &str) -> PResult<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| ParseError(format!("--cone: \"{s}\" is not an index"))))
        .collect()
}

pub fn int_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer is a JSON number"))
}

pub fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn rat_json(x: &Rat) -> Value {
    Value::String(format_rational(x))
}

pub fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn approx_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| x.to_f64().and_then(Number::from_f64).map_or(Value::Null, Value::Number)).collect())
}

pub fn int_mat_json(m: &IntMat) -> Value {
    Value::Array(m.rows_iter().map(ints_json).collect())
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({ "rank": g.rank, "torsion": ints_json(&g.torsion) })
}

pub fn vpolytope_json(p: &VPolytope) -> Value {
    json!({ "dim": p.dim(), "vertices": p.vertices().iter().map(|v| rats_json(v)).collect::<Vec<_>>() })
}

pub fn hpolytope_json(p: &HPolytope) -> Value {
    let ineqs: Vec<Value> =
        p.inequalities().iter().map(|h| json!({ "normal": rats_json(&h.normal), "rhs": rat_json(&h.rhs) })).collect();
    json!({ "dim": p.dim(), "ineqs": ineqs })
}

pub fn divisor_json(d: &ToricDivisor) -> Value {
    json!({ "coeffs": rats_json(d.coeffs()) })
}

pub fn fan_json(f: &Fan) -> Value {
    let rays: Vec<Value> = f.rays().iter().map(|r| ints_json(r)).collect();
    json!({ "dim": f.dim(), "rays": rays, "max_cones": f.max_cones() })
}

/// Adds `"<key>_approx"` decimal renderings next to each listed rational vector.
pub fn add_approx(obj: &mut Map<String, Value>, key: &str, v: &[Rat]) {
    obj.insert(format!("{key}_approx"), approx_json(v));
}
