//! JSON encoding of exact values: coefficients as {"num", "den"} decimal
//! strings (no integer-width limits), monomials as factor lists, elements
//! with both the structured terms and the text syntax.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::context::{AlgebraContext, DefwError, JetOrder, Result};
use crate::element::{Element, Rat};
use crate::monomial::{GenKind, Generator, Monomial};
use crate::text::parse_element;

pub fn rat_to_json(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    let num = v
        .get("num")
        .and_then(Value::as_str)
        .ok_or_else(|| DefwError::Parse("coefficient missing num".into()))?;
    let den = v
        .get("den")
        .and_then(Value::as_str)
        .ok_or_else(|| DefwError::Parse("coefficient missing den".into()))?;
    let num: BigInt = num
        .parse()
        .map_err(|e| DefwError::Parse(format!("bad num: {e}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|e| DefwError::Parse(format!("bad den: {e}")))?;
    if den == BigInt::from(0) {
        return Err(DefwError::Parse("zero denominator".into()));
    }
    Ok(Rat::new(num, den))
}

pub fn monomial_to_json(m: &Monomial) -> Value {
    let factors: Vec<Value> = m
        .factors()
        .map(|g| {
            json!({
                "kind": match g.kind { GenKind::H => "h", GenKind::C => "c" },
                "i": g.index,
                "a": g.order,
            })
        })
        .collect();
    Value::Array(factors)
}

pub fn monomial_from_json(v: &Value) -> Result<Monomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| DefwError::Parse("monomial must be a factor array".into()))?;
    let mut word = Vec::with_capacity(arr.len());
    for f in arr {
        let kind = match f.get("kind").and_then(Value::as_str) {
            Some("h") => GenKind::H,
            Some("c") => GenKind::C,
            _ => return Err(DefwError::Parse("factor kind must be h or c".into())),
        };
        let index =
            f.get("i")
                .and_then(Value::as_u64)
                .ok_or_else(|| DefwError::Parse("factor missing index".into()))? as u32;
        let order =
            f.get("a")
                .and_then(Value::as_u64)
                .ok_or_else(|| DefwError::Parse("factor missing order".into()))? as u32;
        word.push(Generator { kind, index, order });
    }
    match Monomial::from_word(&word) {
        Some((1, m)) => Ok(m),
        Some(_) => Err(DefwError::Parse(
            "factors are not in canonical order".into(),
        )),
        None => Err(DefwError::Parse("repeated odd generator".into())),
    }
}

pub fn element_to_json(e: &Element) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(m, c)| json!({ "coeff": rat_to_json(c), "monomial": monomial_to_json(m) }))
        .collect();
    json!({ "text": e.to_string(), "terms": terms })
}

pub fn element_from_json(v: &Value, ctx: AlgebraContext) -> Result<Element> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| DefwError::Parse("element missing terms".into()))?;
    let mut out = Element::zero(ctx);
    for t in terms {
        let coeff = rat_from_json(
            t.get("coeff")
                .ok_or_else(|| DefwError::Parse("term missing coeff".into()))?,
        )?;
        let m = monomial_from_json(
            t.get("monomial")
                .ok_or_else(|| DefwError::Parse("term missing monomial".into()))?,
        )?;
        m.validate(&ctx)?;
        out.add_term(m, coeff);
    }
    Ok(out)
}

/// Re-parse the text form carried in an element payload; used by the
/// round-trip contract tests.
pub fn element_from_json_text(v: &Value, ctx: AlgebraContext) -> Result<Element> {
    let text = v
        .get("text")
        .and_then(Value::as_str)
        .ok_or_else(|| DefwError::Parse("element missing text".into()))?;
    parse_element(text, ctx)
}

pub fn jet_order_to_json(r: JetOrder) -> Value {
    match r {
        JetOrder::Unbounded => json!("inf"),
        JetOrder::Finite(n) => json!(n),
    }
}

pub fn rat_display(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_vec_display(v: &[Rat]) -> String {
    let inner: Vec<String> = v.iter().map(rat_display).collect();
    format!("({})", inner.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::AlgebraContext;

    #[test]
    fn element_json_roundtrip() {
        let ctx = AlgebraContext::free(1);
        let e = parse_element("-15/14 h[1,0]*h[1,1] + 2 c[1,0] - 1/3 h[1,2]", ctx).unwrap();
        let v = element_to_json(&e);
        assert_eq!(element_from_json(&v, ctx).unwrap(), e);
        assert_eq!(element_from_json_text(&v, ctx).unwrap(), e);
    }

    #[test]
    fn rejects_non_canonical_factor_order() {
        let v = serde_json::json!([
            {"kind": "h", "i": 1, "a": 1},
            {"kind": "h", "i": 1, "a": 0},
        ]);
        assert!(monomial_from_json(&v).is_err());
    }
}
