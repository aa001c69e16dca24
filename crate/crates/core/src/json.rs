//! JSON encodings shared by the CLI and the C interface.
//!
//! Integers are emitted as exact JSON numbers of any size; rationals and
//! field elements as strings (`"-1/2"`, `"7/2-1/2*sqrt(-31)"`). Keys keep
//! insertion order, so parsing and re-rendering is byte-identical.

use std::str::FromStr;

use num::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::classgroup::{ClassTable, EquivalenceVerdict};
use crate::composition::CompositionResult;
use crate::cubicform::{CovariantForm, CubicForm, HessianQuad, Unimodular};
use crate::error::{Error, Result};
use crate::idealmod::{BalancedPair, OrientedIdeal};

pub fn int(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer"))
}

fn ints<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(v.into_iter().map(int).collect())
}

pub fn form(f: &CubicForm) -> Value {
    json!({ "a": ints(&f.a) })
}

pub fn covariant(c: &CovariantForm) -> Value {
    json!({ "c": c.c.iter().map(|v| v.to_string()).collect::<Vec<_>>() })
}

pub fn hessian(h: &HessianQuad) -> Value {
    json!({ "q": ints(&h.q) })
}

pub fn unimodular(g: &Unimodular) -> Value {
    ints(g.entries())
}

pub fn ideal(j: &OrientedIdeal) -> Value {
    json!({ "alpha": j.alpha().to_string(), "beta": j.beta().to_string() })
}

pub fn pair(p: &BalancedPair) -> Value {
    json!({
        "ideal": ideal(&p.ideal),
        "delta": p.delta.to_string(),
        "signed_norm": p.ideal.signed_norm().to_string(),
    })
}

pub fn composition(r: &CompositionResult) -> Value {
    json!({
        "P": form(&r.form),
        "X": ints(&r.xy.m),
        "Y": ints(&r.xy.n),
        "verified": r.verification.passed(),
    })
}

pub fn verdict(v: &EquivalenceVerdict) -> Value {
    match v {
        EquivalenceVerdict::Equivalent(g) => json!({
            "status": "equivalent",
            "witness": unimodular(g),
        }),
        EquivalenceVerdict::NotFoundWithinBound { depth, ceiling } => json!({
            "status": "not_found_within_bound",
            "depth": depth,
            "ceiling": int(ceiling),
        }),
    }
}

pub fn class_table(t: &ClassTable) -> Value {
    let mut m = Map::new();
    m.insert("D".into(), int(t.disc.value()));
    m.insert("reps".into(), Value::Array(t.reps.iter().map(form).collect()));
    m.insert("identity".into(), json!(t.identity));
    m.insert("table".into(), json!(t.table));
    Value::Object(m)
}

/// Compact rendering.
pub fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| Error::Parse(format!("not an integer: {n}"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

/// Reads `{"a":[a0,a1,a2,a3]}`.
pub fn parse_form(text: &str) -> Result<CubicForm> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let arr = v
        .get("a")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("expected {\"a\":[a0,a1,a2,a3]}".into()))?;
    let a: Vec<BigInt> = arr.iter().map(parse_int).collect::<Result<_>>()?;
    let a: [BigInt; 4] = a
        .try_into()
        .map_err(|_| Error::Parse("a form has exactly four coefficients".into()))?;
    Ok(CubicForm::new(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let f = CubicForm::new([
            BigInt::from(-1),
            BigInt::from_str("123456789012345678901234567890").unwrap(),
            BigInt::from(0),
            BigInt::from(4),
        ]);
        let text = render(&form(&f));
        assert_eq!(text, r#"{"a":[-1,123456789012345678901234567890,0,4]}"#);
        assert_eq!(parse_form(&text).unwrap(), f);
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(render(&reparsed), text);
        assert!(parse_form(r#"{"a":[1,2,3]}"#).is_err());
        assert!(parse_form(r#"{"a":[1,2,3,"4"]}"#).is_err());
    }

    #[test]
    fn covariant_strings() {
        let c = CubicForm::from_i64(-1, -1, 1, 4).covariant();
        assert_eq!(render(&covariant(&c)), r#"{"c":["-1/2","7/2","13/2","1"]}"#);
    }
}
