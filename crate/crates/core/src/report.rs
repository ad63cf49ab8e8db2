//! JSON documents emitted by the command-line tool and the C interface.
//!
//! Every document is an object carrying `"schema_version"` and `"command"`;
//! `docs/schema.json` describes them all.

use serde_json::{json, Map, Value};

use crate::cartier::{Classification, SemilinearMap};
use crate::covers::CoverCertificate;
use crate::curve::{AffineFunction, BasisForm, HyperellipticCurve};
use crate::elliptic::{CanonicalCover, TableRow};
use crate::moduli::{ClassRecord, FamilyReport, SearchReport, WeierstrassTally};

pub const SCHEMA_VERSION: u64 = 1;

/// Wraps `body` (an object) with the version and command fields.
pub fn document(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    match body {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    Value::Object(map)
}

pub fn curve(c: &HyperellipticCurve) -> Value {
    json!({
        "p": c.p(),
        "m": c.field().degree(),
        "f": c.f().to_string(),
        "genus": c.genus(),
    })
}

pub fn function(t: &AffineFunction) -> Value {
    json!({ "a": t.a.to_string(), "b": t.b.to_string() })
}

pub fn certificate(cert: &CoverCertificate) -> Value {
    json!({
        "curve": curve(&cert.curve),
        "t": function(&cert.t),
        "degree": cert.degree,
        "c": cert.curve.field().format(cert.dt_constant),
        "minimal": cert.minimal,
    })
}

pub fn rejection(c: &HyperellipticCurve, reason: &str) -> Value {
    json!({ "curve": curve(c), "rejected": true, "reason": reason })
}

fn labels(basis: &[BasisForm]) -> Vec<String> {
    basis.iter().map(|b| b.label()).collect()
}

pub fn matrix(map: &SemilinearMap) -> Value {
    let k = map.matrix.field();
    let rows: Vec<Vec<String>> = (0..map.matrix.rows())
        .map(|i| map.matrix.row(i).iter().map(|&e| k.format(e)).collect())
        .collect();
    json!({
        "m_dom": map.m_dom,
        "m_cod": map.m_cod,
        "dom_basis": labels(&map.dom_basis),
        "cod_basis": labels(&map.cod_basis),
        "rows": rows,
    })
}

pub fn classification(c: Classification) -> Value {
    json!(c.to_string())
}

pub fn min_degree(linalg: u64, explicit: u64) -> Value {
    json!({ "linalg": linalg, "explicit": explicit, "agree": linalg == explicit })
}

pub fn legendre(p: u64, m: u32, cc: &CanonicalCover, k: &crate::algebra::Field) -> Value {
    json!({
        "p": p,
        "m": m,
        "lambda": k.format(cc.data.lambda),
        "c_m": k.format(cc.data.c_m),
        "c_m_minus_1": k.format(cc.data.c_m_minus_1),
        "class": cc.class.name(),
        "c": cc.c.map(|c| k.format(c)),
        "zero_multiplicities": cc.zero_multiplicities,
    })
}

/// `b(x) y` written as `y`, `x*y` or `(x^2 + 4)*y`.
fn cover_text(b: &crate::algebra::Poly) -> String {
    let text = b.to_string();
    if text == "1" {
        "y".into()
    } else if text.contains(' ') {
        format!("({text})*y")
    } else {
        format!("{text}*y")
    }
}

pub fn table_row(row: &TableRow) -> Value {
    let k = row.curve.field();
    json!({
        "p": row.p,
        "equation": format!("y^2 = {}", row.curve.f()),
        "j": k.format(row.j),
        "cover": cover_text(&row.cover),
        "degree": row.verdict.degree(),
        "verified": row.verified(),
    })
}

fn class(c: &ClassRecord) -> Value {
    let witnesses: Vec<Value> = c
        .witnesses
        .iter()
        .map(|w| json!({ "degree": w.degree, "a": w.t.a.to_string(), "b": w.t.b.to_string() }))
        .collect();
    json!({
        "normal_form": c.normal_form.format(),
        "class_size": c.class_size,
        "classification": classification(c.classification),
        "p_rank": c.p_rank,
        "min_degree": min_degree(c.min_degree_linalg, c.min_degree_explicit),
        "admissible_degrees": c.admissible_degrees,
        "witnesses": witnesses,
    })
}

fn tally(t: &WeierstrassTally) -> Value {
    json!({
        "normal_form": t.normal_form.format(),
        "degree_p_points": t.degree_p_points,
        "total_points": t.total_points,
    })
}

pub fn search(r: &SearchReport) -> Value {
    json!({
        "p": r.p,
        "g": r.genus,
        "q": r.q,
        "normalization": r.normalization.name(),
        "candidates": r.candidates,
        "members": r.members,
        "classes": r.classes.iter().map(class).collect::<Vec<_>>(),
        "weierstrass_experiment": r.weierstrass_experiment.iter().map(tally).collect::<Vec<_>>(),
    })
}

pub fn family(r: &FamilyReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "failed": c.failed }))
        .collect();
    json!({
        "family": r.family.id(),
        "model": r.family.model(),
        "p": r.family.characteristic(),
        "extension_degree": r.extension_degree,
        "field_order": r.field_order,
        "degree_bound": r.degree_bound,
        "exact": r.exact,
        "points": r.points,
        "smooth_points": r.smooth_points,
        "checks": checks,
        "failures": r.failures,
        "passed": r.passed(),
    })
}
