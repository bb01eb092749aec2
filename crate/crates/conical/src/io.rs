//! JSON input/output: the cone spec file format, certificate and report
//! serialization, and a small 2D SVG plotter. All emitted JSON has sorted
//! keys and canonical "num/den" encodings, so identical inputs produce
//! byte-identical output.

use std::sync::Arc;

use num::BigInt;
use serde_json::{json, Value};

use crate::algebraic::{fmt_rat, parse_rat, AlgebraicNumber, FieldContext, Rat};
use crate::cone::{Cone, ConeKind};
use crate::error::Error;
use crate::generation::{GeneratingSet, Representation, VerifyReport};
use crate::lab::{FamilyCheck, FermatScanResult};
use crate::linalg::Matrix;
use crate::symmetry::{SymmetryCertificate, Verdict};
use crate::Result;

pub const SCHEMA_VERSION: u64 = 1;

// ---------------------------------------------------------------------------
// Cone spec parsing
// ---------------------------------------------------------------------------

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field_from_json(v: Option<&Value>) -> Result<Arc<FieldContext>> {
    let Some(v) = v else {
        return Ok(FieldContext::rational());
    };
    let obj = v.as_object().ok_or_else(|| parse_error("\"field\" must be an object"))?;
    let minpoly: Vec<BigInt> = obj
        .get("minpoly")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("\"field.minpoly\" must be an integer array"))?
        .iter()
        .map(|c| {
            if let Some(n) = c.as_i64() {
                Ok(BigInt::from(n))
            } else if let Some(s) = c.as_str() {
                s.parse::<BigInt>().map_err(|e| parse_error(format!("bad coefficient: {e}")))
            } else {
                Err(parse_error("minpoly coefficients must be integers"))
            }
        })
        .collect::<Result<_>>()?;
    let interval = obj
        .get("root_interval")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("\"field.root_interval\" must be a two-element array"))?;
    if interval.len() != 2 {
        return Err(parse_error("\"field.root_interval\" must have exactly two entries"));
    }
    let bound = |v: &Value| -> Result<Rat> {
        match v {
            Value::String(s) => parse_rat(s),
            Value::Number(n) => n
                .as_i64()
                .map(|k| Rat::from_integer(BigInt::from(k)))
                .ok_or_else(|| parse_error("root interval bounds must be integers or \"num/den\"")),
            _ => Err(parse_error("root interval bounds must be integers or \"num/den\"")),
        }
    };
    FieldContext::new(minpoly, bound(&interval[0])?, bound(&interval[1])?)
}

fn entry_from_json(ctx: &Arc<FieldContext>, v: &Value) -> Result<AlgebraicNumber> {
    match v {
        Value::Number(n) => {
            let k = n.as_i64().ok_or_else(|| parse_error("ray entries must be exact"))?;
            Ok(AlgebraicNumber::from_int(ctx, k))
        }
        Value::String(s) => Ok(AlgebraicNumber::from_rat(ctx, parse_rat(s)?)),
        Value::Array(parts) => {
            let coeffs: Vec<String> = parts
                .iter()
                .map(|p| match p {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => n
                        .as_i64()
                        .map(|k| k.to_string())
                        .ok_or_else(|| parse_error("ray entries must be exact")),
                    _ => Err(parse_error("coefficient must be \"num/den\" or integer")),
                })
                .collect::<Result<_>>()?;
            AlgebraicNumber::decode(ctx, &coeffs)
        }
        _ => Err(parse_error("ray entry must be an integer, \"num/den\", or coefficient list")),
    }
}

/// Parses the single CLI input format:
/// `{"dim", "field": {"minpoly", "root_interval"}, "kind", "rays"}`.
pub fn parse_cone_spec(text: &str) -> Result<Cone> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| parse_error("spec must be a JSON object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_error("\"dim\" must be a positive integer"))? as usize;
    let kind = match obj.get("kind").and_then(Value::as_str).unwrap_or("pointed") {
        "pointed" => ConeKind::Pointed,
        "halfspace" => ConeKind::Halfspace,
        other => return Err(parse_error(format!("unknown kind {other:?}"))),
    };
    let ctx = field_from_json(obj.get("field"))?;
    let rays_json = obj
        .get("rays")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error("\"rays\" must be an array of coordinate arrays"))?;
    let mut rays = Vec::with_capacity(rays_json.len());
    for ray in rays_json {
        let coords = ray
            .as_array()
            .ok_or_else(|| parse_error("each ray must be a coordinate array"))?;
        rays.push(coords.iter().map(|e| entry_from_json(&ctx, e)).collect::<Result<Vec<_>>>()?);
    }
    Cone::new(&ctx, dim, kind, rays)
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

pub fn alg_json(x: &AlgebraicNumber) -> Value {
    Value::Array(x.encode().into_iter().map(Value::String).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array(m.row(i).iter().map(alg_json).collect()))
            .collect(),
    )
}

fn zvec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn cone_spec_json(c: &Cone) -> Value {
    let ctx = c.context();
    let (lo, hi) = ctx.root_interval();
    json!({
        "dim": c.dim(),
        "field": {
            "minpoly": ctx.minpoly().iter().map(|x| Value::String(x.to_string())).collect::<Vec<_>>(),
            "root_interval": [fmt_rat(lo), fmt_rat(hi)],
        },
        "kind": match c.kind() { ConeKind::Pointed => "pointed", ConeKind::Halfspace => "halfspace" },
        "rays": c.rays().iter().map(|r| Value::Array(r.dir().iter().map(alg_json).collect())).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(cert: &SymmetryCertificate) -> Value {
    json!({
        "fixing_generator": cert.fixing_generator.as_ref().map(matrix_json),
        "eigenvalues": cert.eigenvalues.iter().map(alg_json).collect::<Vec<_>>(),
        "switchers": cert.switchers.iter().map(matrix_json).collect::<Vec<_>>(),
        "group_class": cert.group_class.as_str(),
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "status": v.status.as_str(),
        "reason_tag": v.reason_tag,
        "reason": v.reason,
        "certificate": v.certificate.as_ref().map(certificate_json),
    })
}

pub fn generating_set_json(gs: &GeneratingSet) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "p_generators": gs.p.generators().iter().map(|g| zvec_json(g)).collect::<Vec<_>>(),
        "hilbert_basis": gs.basis.elements.iter().map(|g| zvec_json(g)).collect::<Vec<_>>(),
        "group_generators": gs.generators.iter().map(matrix_json).collect::<Vec<_>>(),
        "extensions": gs.extensions.iter().map(|g| zvec_json(g)).collect::<Vec<_>>(),
    })
}

pub fn representation_json(rep: &Representation) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "terms": rep.terms.iter().map(|t| json!({
            "multiplicity": t.multiplicity.to_string(),
            "word": t.word,
            "element": zvec_json(&t.element),
        })).collect::<Vec<_>>(),
    })
}

pub fn verify_report_json(r: &VerifyReport) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "bound": r.bound,
        "points_in_cone": r.points_in_cone,
        "decomposed": r.decomposed,
        "failures": r.failures.iter().map(|(v, msg)| json!({
            "point": zvec_json(v),
            "error": msg,
        })).collect::<Vec<_>>(),
        "extensions_used": r.extensions_used,
        "passes": r.passes(),
    })
}

pub fn fermat_json(r: &FermatScanResult) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "k": r.k,
        "z_max": r.z_max,
        "hits": r.hits.iter().map(|(x, y, z)| json!([
            x.to_string(), y.to_string(), z.to_string()
        ])).collect::<Vec<_>>(),
        "all_trivial": r.all_trivial(),
    })
}

pub fn family_json(fc: &FamilyCheck, non_subtractable: bool) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "n1": fc.n1,
        "alpha": fc.alpha.iter().map(alg_json).collect::<Vec<_>>(),
        "half_parameters": fc.ints.iter().map(|x| Value::String(x.to_string())).collect::<Vec<_>>(),
        "v": zvec_json(&fc.v),
        "checks": fc.checks.iter().map(|(name, ok)| json!({"name": name, "pass": ok})).collect::<Vec<_>>(),
        "non_subtractable": non_subtractable,
        "passes": fc.passes() && non_subtractable,
    })
}

/// Canonical rendering used by the CLI: sorted keys, two-space indent,
/// trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Certificate replay (--check)
// ---------------------------------------------------------------------------

fn matrix_from_json(ctx: &Arc<FieldContext>, v: &Value) -> Result<Matrix> {
    let rows_json = v.as_array().ok_or_else(|| parse_error("matrix must be an array of rows"))?;
    let mut rows = Vec::with_capacity(rows_json.len());
    for row in rows_json {
        let row = row.as_array().ok_or_else(|| parse_error("matrix row must be an array"))?;
        rows.push(row.iter().map(|e| entry_from_json(ctx, e)).collect::<Result<Vec<_>>>()?);
    }
    Matrix::from_rows(ctx, rows)
}

/// Re-parses an emitted verdict and replays the exact verifications of its
/// certificate against the cone. Returns one line per replayed check; fails
/// with an error if any check does not hold.
pub fn replay_verdict(c: &Cone, verdict: &Value) -> Result<Vec<String>> {
    let obj = verdict.as_object().ok_or_else(|| parse_error("verdict must be an object"))?;
    let status = obj
        .get("status")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_error("verdict missing \"status\""))?;
    let mut lines = vec![format!("status: {status}")];
    let Some(cert) = obj.get("certificate").filter(|v| !v.is_null()) else {
        lines.push("certificate: none".into());
        return Ok(lines);
    };
    let ctx = c.context();
    let fixing = cert
        .get("fixing_generator")
        .filter(|v| !v.is_null())
        .map(|v| matrix_from_json(ctx, v))
        .transpose()?;
    if let Some(a) = &fixing {
        let report = crate::symmetry::verify_supplied(c, a);
        for line in report.lines() {
            lines.push(line);
        }
        if !report.passes() {
            return Err(parse_error("fixing generator failed replay verification"));
        }
    }
    if let Some(switchers) = cert.get("switchers").and_then(Value::as_array) {
        for (i, qv) in switchers.iter().enumerate() {
            let q = matrix_from_json(ctx, qv)?;
            let involution = q.mul(&q)?.is_identity();
            lines.push(format!("switcher {i}: involution {involution}"));
            if !involution {
                return Err(parse_error("switcher is not an involution"));
            }
            if let Some(a) = &fixing {
                let conj = q.mul(a)?.mul(&q)?;
                let inverts = conj == a.inverse()?;
                lines.push(format!("switcher {i}: conjugates generator to inverse {inverts}"));
                if !inverts {
                    return Err(parse_error("switcher does not invert the generator"));
                }
            }
        }
    }
    Ok(lines)
}

// ---------------------------------------------------------------------------
// SVG plot (2D)
// ---------------------------------------------------------------------------

fn approx(x: &AlgebraicNumber) -> f64 {
    x.approx()
}

/// Draws the cone rays, the rational sub-cone P, the Hilbert basis points,
/// and one group orbit as a standalone SVG document (2D cones only).
pub fn plot_cone_svg(c: &Cone, gs: Option<&GeneratingSet>) -> Result<String> {
    if c.dim() != 2 {
        return Err(Error::Unsupported("plots are available for 2D cones only".into()));
    }
    let scale = 40.0;
    let size = 480.0;
    let origin = (size / 2.0, size - 40.0);
    let to_px = |x: f64, y: f64| (origin.0 + scale * x, origin.1 - scale * y);
    let mut body = String::new();
    let mut line = |x0: f64, y0: f64, x1: f64, y1: f64, color: &str, width: f64| {
        let (a, b) = to_px(x0, y0);
        let (p, q) = to_px(x1, y1);
        body.push_str(&format!(
            "<line x1=\"{a:.2}\" y1=\"{b:.2}\" x2=\"{p:.2}\" y2=\"{q:.2}\" \
             stroke=\"{color}\" stroke-width=\"{width}\"/>\n"
        ));
    };
    for ray in c.rays() {
        let d = ray.dir();
        let (x, y) = (approx(&d[0]), approx(&d[1]));
        let n = (x * x + y * y).sqrt().max(1e-9);
        let f = 5.5 / n;
        line(0.0, 0.0, x * f, y * f, "#333333", 2.0);
    }
    let mut dots = String::new();
    if let Some(gs) = gs {
        for g in gs.p.generators() {
            let x: f64 = g[0].to_string().parse().unwrap_or(0.0);
            let y: f64 = g[1].to_string().parse().unwrap_or(0.0);
            let n = (x * x + y * y).sqrt().max(1e-9);
            let f = 5.0 / n;
            line(0.0, 0.0, x * f, y * f, "#1f77b4", 1.5);
        }
        for r in &gs.basis.elements {
            let x: f64 = r[0].to_string().parse().unwrap_or(0.0);
            let y: f64 = r[1].to_string().parse().unwrap_or(0.0);
            let (px, py) = to_px(x, y);
            dots.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\" fill=\"#d62728\"/>\n"
            ));
        }
        // One orbit of the first basis point under the first generator.
        if let (Some(a), Some(r0)) = (gs.generators.first(), gs.basis.elements.first()) {
            let ctx = c.context();
            let mut v: Vec<AlgebraicNumber> = r0
                .iter()
                .map(|x| AlgebraicNumber::from_rat(ctx, Rat::from_integer(x.clone())))
                .collect();
            for _ in 0..4 {
                let w = a.mul_vec(&v)?;
                let (x0, y0) = (approx(&v[0]), approx(&v[1]));
                let (x1, y1) = (approx(&w[0]), approx(&w[1]));
                line(x0, y0, x1, y1, "#2ca02c", 1.0);
                let (px, py) = to_px(x1, y1);
                dots.push_str(&format!(
                    "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"#2ca02c\"/>\n"
                ));
                v = w;
            }
        }
    }
    Ok(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n<rect width=\"{size}\" height=\"{size}\" \
         fill=\"white\"/>\n{body}{dots}</svg>\n"
    ))
}
