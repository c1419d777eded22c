//! Canonical JSON encoding of [`QSeries`].
//!
//! ```text
//! { "q_min": -1, "q_max": 2,
//!   "rows": [ { "q": -1, "terms": [ { "s": 0, "re": "1", "im": "0" } ] }, … ] }
//! ```
//!
//! Terms are sorted by `s`-exponent. A row with poles at `s² = ±1` carries an extra
//! `"den": [a, b]` field meaning division by `(1 − s²)^a (1 + s²)^b`. Exact series carry
//! `"exact": true`.

use super::gauss::Gq;
use super::laurent::SLaurent;
use super::qseries::QSeries;
use super::srat::SRat;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

fn term_json(e: i64, c: &Gq) -> Value {
    json!({ "s": e, "re": Gq::fmt_rational(&c.re), "im": Gq::fmt_rational(&c.im) })
}

/// Encodes one coefficient row.
pub fn row_to_json(q: i64, r: &SRat) -> Value {
    let terms: Vec<Value> = r.numerator().terms().map(|(e, c)| term_json(e, c)).collect();
    let mut m = Map::new();
    m.insert("q".into(), json!(q));
    m.insert("terms".into(), Value::Array(terms));
    let (a, b) = r.denominator_exponents();
    if a > 0 || b > 0 {
        m.insert("den".into(), json!([a, b]));
    }
    Value::Object(m)
}

/// Encodes a series; zero rows are omitted.
pub fn to_json(x: &QSeries) -> Value {
    let rows: Vec<Value> = x.rows().filter(|(_, r)| !r.is_zero()).map(|(n, r)| row_to_json(n, r)).collect();
    let mut m = Map::new();
    m.insert("q_min".into(), json!(x.q_min()));
    m.insert("q_max".into(), json!(x.last_row()));
    if x.is_exact() {
        m.insert("exact".into(), json!(true));
    }
    m.insert("rows".into(), Value::Array(rows));
    Value::Object(m)
}

fn bad(msg: &str) -> Error {
    Error::Parse(format!("series JSON: {msg}"))
}

fn rational_field(v: &Value, key: &str) -> Result<BigRational> {
    match v.get(key) {
        None => Ok(BigRational::zero()),
        Some(Value::String(s)) => Gq::parse_rational(s).ok_or_else(|| bad(&format!("bad rational {s:?}"))),
        Some(Value::Number(n)) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| bad("non-integer number")),
        _ => Err(bad(&format!("field {key} must be a string"))),
    }
}

fn int_field(v: &Value, key: &str) -> Result<i64> {
    v.get(key).and_then(Value::as_i64).ok_or_else(|| bad(&format!("missing integer field {key}")))
}

/// Decodes a series written by [`to_json`].
pub fn from_json(v: &Value) -> Result<QSeries> {
    let q_min = int_field(v, "q_min")?;
    let q_max = int_field(v, "q_max")?;
    let exact = v.get("exact").and_then(Value::as_bool).unwrap_or(false);
    let rows_v = v.get("rows").and_then(Value::as_array).ok_or_else(|| bad("missing rows"))?;
    let len = (q_max - q_min + 1).max(0) as usize;
    let mut rows = vec![SRat::zero(); len];
    for r in rows_v {
        let q = int_field(r, "q")?;
        if q < q_min || q > q_max {
            return Err(bad(&format!("row q = {q} outside [{q_min}, {q_max}]")));
        }
        let terms = r.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut t = Vec::with_capacity(terms.len());
        for term in terms {
            let e = int_field(term, "s")?;
            t.push((e, Gq::new(rational_field(term, "re")?, rational_field(term, "im")?)));
        }
        let (a, b) = match r.get("den") {
            None => (0, 0),
            Some(d) => {
                let d = d.as_array().filter(|d| d.len() == 2).ok_or_else(|| bad("den must be [a, b]"))?;
                let a = d[0].as_u64().ok_or_else(|| bad("den entries must be nonnegative"))?;
                let b = d[1].as_u64().ok_or_else(|| bad("den entries must be nonnegative"))?;
                (a as u32, b as u32)
            }
        };
        rows[(q - q_min) as usize] = SRat::new(SLaurent::from_terms(t), a, b);
    }
    Ok(if exact { QSeries::exact_from_rows(q_min, rows) } else { QSeries::from_rows(q_min, q_max, rows) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_poles() {
        let r0 = SRat::new(SLaurent::monomial(Gq::one(), 2), 2, 0);
        let r1 = SRat::from_laurent(SLaurent::from_terms([(-1, Gq::i()), (1, Gq::frac(-3, 2))]));
        let x = QSeries::from_rows(-1, 1, vec![r0, SRat::zero(), r1]);
        let v = to_json(&x);
        assert_eq!(from_json(&v).unwrap(), x);
        assert_eq!(v["rows"][0]["den"], json!([2, 0]));
        assert_eq!(v["rows"][1]["terms"][0]["im"], json!("1"));
    }
}
