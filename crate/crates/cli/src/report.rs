//! JSON encodings of core types. Object keys are sorted, so equal inputs
//! produce byte-identical output.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use vgit_core::{
    Character, Cone, FanCone, IntVec, QuasimapDatum, Stabilizer, Support, SupportFamily,
};

/// Integers that fit in an `i64` are numbers; larger ones are strings.
pub fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn vector(v: &IntVec) -> Value {
    Value::Array(v.coords().iter().map(big).collect())
}

pub fn vectors(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

pub fn character(c: &Character) -> Value {
    vector(c.as_vec())
}

pub fn cone(c: &Cone) -> Value {
    json!({
        "dimension": c.dimension(),
        "rays": vectors(c.rays()),
        "lineality": vectors(c.lineality()),
        "facets": vectors(c.facets()),
        "equations": vectors(c.equations()),
    })
}

/// 1-based coordinate indices.
pub fn support(s: Support) -> Value {
    Value::Array(s.indices().map(|i| Value::from(i + 1)).collect())
}

pub fn family(f: &SupportFamily) -> Value {
    Value::Array(f.minimal_supports().iter().map(|&s| support(s)).collect())
}

pub fn fan_cone(fc: &FanCone) -> Value {
    json!({
        "cone": cone(&fc.cone),
        "representative": character(&fc.representative),
        "minimal_semistable_supports": family(&fc.supports),
    })
}

pub fn stabilizer(s: &Stabilizer) -> Value {
    json!({
        "group": s.to_string(),
        "invariant_factors": Value::Array(s.invariant_factors().iter().map(big).collect()),
    })
}

pub fn datum(qm: &QuasimapDatum, kappa: &Character) -> Value {
    json!({
        "lambda": vector(qm.lambda.as_vec()),
        "support": support(qm.support),
        "theta": character(&qm.theta),
        "degree": big(&qm.degree(kappa)),
    })
}

/// One-line text form listing both descriptions.
pub fn cone_plain(c: &Cone) -> String {
    let list = |vs: &[IntVec]| {
        if vs.is_empty() {
            "-".to_string()
        } else {
            vs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    let mut s = format!("rays {}", list(c.rays()));
    if !c.lineality().is_empty() {
        s += &format!("; lineality {}", list(c.lineality()));
    }
    s += &format!("; facets {}", list(c.facets()));
    if !c.equations().is_empty() {
        s += &format!("; equations {}", list(c.equations()));
    }
    s
}
