//! Canonical JSON documents for tensors, series, matrix triples and
//! verdicts.
//!
//! Keys are sorted, rationals are written `"p/q"` (integers without a
//! denominator), cyclotomic numbers of order > 1 as `{"order", "coeffs"}`,
//! and monomials as exponent lists over the fixed variables
//! `x, y, z, x1, x2, x3`. Parsing rejects any non-canonical scalar.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::lie::{BasisIndex, LieElem, Tensor2, Tensor3};
use crate::manin::{LaurentLoop, SeriesTensor};
use crate::poly::{Factor, MLaurent, Monomial, RatFun, Var, NVARS};
use crate::scalars::{format_rational, parse_rational, Cyclotomic, Rational};
use crate::sheaf::{CurveKind, MatTriple};
use crate::verify::{Verdict, Witness};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("schema error: {0}")]
    Schema(String),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Malformed(msg.into())
}

/// The payload of a document.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Tensor2(Tensor2<RatFun>),
    Tensor3(Tensor3<RatFun>),
    Series(SeriesTensor),
    Triple(MatTriple),
    Verdicts(Vec<Verdict>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Tensor2(_) => "tensor2",
            Document::Tensor3(_) => "tensor3",
            Document::Series(_) => "series",
            Document::Triple(_) => "triple",
            Document::Verdicts(_) => "verdicts",
        }
    }
}

/// Canonical text of a document, newline terminated.
pub fn serialize(doc: &Document) -> String {
    let mut body = match doc {
        Document::Tensor2(t) => json!({
            "n": t.n(),
            "entries": t.entries().map(|(&(a, b), c)| entry_value(&[a, b], c)).collect::<Vec<_>>(),
        }),
        Document::Tensor3(t) => json!({
            "n": t.n(),
            "entries": t.entries().map(|(k, c)| entry_value(k, c)).collect::<Vec<_>>(),
        }),
        Document::Series(s) => json!({
            "n": s.n,
            "order": s.order,
            "coeffs": s.coeffs.iter().map(|(&(k, a), f)| json!({
                "k": k,
                "index": a.to_string(),
                "terms": loop_value(f),
            })).collect::<Vec<_>>(),
        }),
        Document::Triple(t) => json!({
            "n": t.n,
            "m": t.m,
            "curve": t.curve.to_string(),
            "first": matrix_value(&t.first),
            "second": matrix_value(&t.second),
        }),
        Document::Verdicts(vs) => json!({
            "verdicts": vs.iter().map(|v| json!({
                "identity": v.identity,
                "pass": v.pass,
                "witness": v.witness.as_ref().map(|w| json!({
                    "indices": w.indices.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "value": w.value,
                })),
            })).collect::<Vec<_>>(),
        }),
    };
    let obj = body.as_object_mut().expect("object");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("kind".into(), json!(doc.kind()));
    if matches!(doc, Document::Tensor2(_) | Document::Tensor3(_)) {
        obj.insert("variables".into(), json!(Var::ALL.iter().map(|v| v.name()).collect::<Vec<_>>()));
    }
    let mut s = serde_json::to_string_pretty(&body).expect("serializable");
    s.push('\n');
    s
}

fn scalar_value(c: &Cyclotomic) -> Value {
    match c.as_rational() {
        Some(q) if c.order() == 1 => json!(format_rational(q)),
        _ => json!({
            "order": c.order(),
            "coeffs": c.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        }),
    }
}

fn entry_value(idx: &[BasisIndex], c: &RatFun) -> Value {
    json!({
        "indices": idx.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "num": laurent_value(c.num()),
        "den": c.den_factors().map(|(f, m)| match f {
            Factor::Diff(a, b) => json!({"factor": [a.name(), b.name()], "mult": m}),
            Factor::Var(v) => json!({"factor": [v.name()], "mult": m}),
        }).collect::<Vec<_>>(),
    })
}

fn laurent_value(p: &MLaurent) -> Value {
    Value::Array(p.terms().map(|(m, c)| json!({"exp": m.0.to_vec(), "coeff": scalar_value(c)})).collect())
}

fn lie_value(x: &LieElem<Cyclotomic>) -> Value {
    Value::Array(x.terms().map(|(b, c)| json!({"index": b.to_string(), "coeff": scalar_value(c)})).collect())
}

fn loop_value(f: &LaurentLoop) -> Value {
    Value::Array(f.terms().map(|(e, x)| json!({"exp": e, "elem": lie_value(x)})).collect())
}

fn matrix_value(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|q| json!(format_rational(q))).collect())).collect())
}

// ---- parsing ----

fn field<'a>(o: &'a Map<String, Value>, k: &str) -> Result<&'a Value, IoError> {
    o.get(k).ok_or_else(|| bad(format!("missing field {k:?}")))
}

fn as_obj(v: &Value) -> Result<&Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| bad("expected an object"))
}

fn as_arr(v: &Value) -> Result<&Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| bad("expected an array"))
}

fn as_str(v: &Value) -> Result<&str, IoError> {
    v.as_str().ok_or_else(|| bad("expected a string"))
}

fn as_uint(v: &Value) -> Result<usize, IoError> {
    v.as_u64().map(|u| u as usize).ok_or_else(|| bad("expected a non-negative integer"))
}

fn as_int(v: &Value) -> Result<i32, IoError> {
    v.as_i64().and_then(|i| i32::try_from(i).ok()).ok_or_else(|| bad("expected an integer"))
}

fn rank_of(o: &Map<String, Value>) -> Result<usize, IoError> {
    let n = as_uint(field(o, "n")?)?;
    if n < 2 {
        return Err(bad(format!("rank {n} < 2")));
    }
    Ok(n)
}

fn parse_rat(v: &Value) -> Result<Rational, IoError> {
    parse_rational(as_str(v)?).map_err(|e| bad(e.to_string()))
}

fn parse_scalar(v: &Value) -> Result<Cyclotomic, IoError> {
    match v {
        Value::String(_) => Ok(Cyclotomic::from_rational(parse_rat(v)?)),
        Value::Object(o) => {
            let order = u32::try_from(as_uint(field(o, "order")?)?).map_err(|_| bad("order too large"))?;
            if order == 1 {
                return Err(bad("order-1 scalars are written as rationals"));
            }
            let coeffs = as_arr(field(o, "coeffs")?)?.iter().map(parse_rat).collect::<Result<Vec<_>, _>>()?;
            Cyclotomic::from_coeffs(order, coeffs).map_err(|e| bad(e.to_string()))
        }
        _ => Err(bad("scalar must be a string or an object")),
    }
}

fn parse_index(v: &Value, n: usize) -> Result<BasisIndex, IoError> {
    let b: BasisIndex = as_str(v)?.parse().map_err(|e: crate::lie::LieError| bad(e.to_string()))?;
    if !b.is_valid(n) {
        return Err(bad(format!("{b} is not a basis element of sl_{n}")));
    }
    Ok(b)
}

fn parse_var(v: &Value) -> Result<Var, IoError> {
    as_str(v)?.parse().map_err(|e: crate::poly::PolyError| bad(e.to_string()))
}

fn parse_laurent(v: &Value) -> Result<MLaurent, IoError> {
    let mut p = MLaurent::default();
    for t in as_arr(v)? {
        let t = as_obj(t)?;
        let exp = as_arr(field(t, "exp")?)?;
        if exp.len() != NVARS {
            return Err(bad(format!("exponent vectors have length {NVARS}")));
        }
        let mut m = Monomial::one();
        for (i, e) in exp.iter().enumerate() {
            m.0[i] = as_int(e)?;
        }
        let c = parse_scalar(field(t, "coeff")?)?;
        if crate::scalars::Ring::is_zero(&c) {
            return Err(bad("zero coefficients are not stored"));
        }
        p.add_term(m, c);
    }
    Ok(p)
}

fn parse_ratfun(o: &Map<String, Value>) -> Result<RatFun, IoError> {
    let num = parse_laurent(field(o, "num")?)?;
    let mut factors = Vec::new();
    for f in as_arr(field(o, "den")?)? {
        let f = as_obj(f)?;
        let vars = as_arr(field(f, "factor")?)?.iter().map(parse_var).collect::<Result<Vec<_>, _>>()?;
        let mult = u32::try_from(as_uint(field(f, "mult")?)?).map_err(|_| bad("multiplicity too large"))?;
        let factor = match vars[..] {
            [a, b] => Factor::Diff(a, b),
            [v] => Factor::Var(v),
            _ => return Err(bad("a factor names one or two variables")),
        };
        factors.push((factor, mult));
    }
    RatFun::new(num, factors).map_err(|e| bad(e.to_string()))
}

fn parse_entries<const K: usize>(o: &Map<String, Value>, n: usize) -> Result<Vec<([BasisIndex; K], RatFun)>, IoError> {
    as_arr(field(o, "entries")?)?
        .iter()
        .map(|e| {
            let e = as_obj(e)?;
            let idx = as_arr(field(e, "indices")?)?;
            if idx.len() != K {
                return Err(bad(format!("entries need {K} indices")));
            }
            let mut key = [BasisIndex::H(1); K];
            for (i, v) in idx.iter().enumerate() {
                key[i] = parse_index(v, n)?;
            }
            Ok((key, parse_ratfun(e)?))
        })
        .collect()
}

fn parse_lie(v: &Value, n: usize) -> Result<LieElem<Cyclotomic>, IoError> {
    let mut x = LieElem::zero(n);
    for t in as_arr(v)? {
        let t = as_obj(t)?;
        x.add_term(parse_index(field(t, "index")?, n)?, parse_scalar(field(t, "coeff")?)?);
    }
    Ok(x)
}

fn parse_matrix(v: &Value) -> Result<Vec<Vec<Rational>>, IoError> {
    as_arr(v)?.iter().map(|r| as_arr(r)?.iter().map(parse_rat).collect()).collect()
}

/// Parses a document produced by [`serialize`].
pub fn parse(text: &str) -> Result<Document, IoError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let o = as_obj(&v)?;
    match o.get("schema_version") {
        None => return Err(IoError::Schema("missing schema_version".into())),
        Some(Value::String(s)) if s == SCHEMA_VERSION => {}
        Some(other) => return Err(IoError::Schema(format!("unsupported schema_version {other}"))),
    }
    let kind = o.get("kind").and_then(Value::as_str).ok_or_else(|| IoError::Schema("missing kind".into()))?;
    match kind {
        "tensor2" => {
            let n = rank_of(o)?;
            let mut t = Tensor2::zero(n);
            for ([a, b], c) in parse_entries::<2>(o, n)? {
                t.add_term(a, b, c);
            }
            Ok(Document::Tensor2(t))
        }
        "tensor3" => {
            let n = rank_of(o)?;
            Ok(Document::Tensor3(Tensor3::from_entries(n, parse_entries::<3>(o, n)?)))
        }
        "series" => {
            let n = rank_of(o)?;
            let order = as_uint(field(o, "order")?)?;
            let mut coeffs = BTreeMap::new();
            for c in as_arr(field(o, "coeffs")?)? {
                let c = as_obj(c)?;
                let k = as_uint(field(c, "k")?)?;
                if k > order {
                    return Err(bad(format!("coefficient k = {k} beyond order {order}")));
                }
                let a = parse_index(field(c, "index")?, n)?;
                let mut f = LaurentLoop::zero(n);
                for t in as_arr(field(c, "terms")?)? {
                    let t = as_obj(t)?;
                    f.add_term(as_int(field(t, "exp")?)?, parse_lie(field(t, "elem")?, n)?);
                }
                if !f.is_zero() {
                    coeffs.insert((k, a), f);
                }
            }
            Ok(Document::Series(SeriesTensor { n, order, coeffs }))
        }
        "triple" => {
            let curve: CurveKind = as_str(field(o, "curve")?)?.parse().map_err(|e: crate::sheaf::SheafError| bad(e.to_string()))?;
            let t = MatTriple::new(curve, parse_matrix(field(o, "first")?)?, parse_matrix(field(o, "second")?)?)
                .map_err(|e| bad(e.to_string()))?;
            if t.n != as_uint(field(o, "n")?)? || t.m != as_uint(field(o, "m")?)? {
                return Err(bad("declared sizes disagree with the matrices"));
            }
            Ok(Document::Triple(t))
        }
        "verdicts" => {
            let vs = as_arr(field(o, "verdicts")?)?
                .iter()
                .map(|v| {
                    let v = as_obj(v)?;
                    let witness = match field(v, "witness")? {
                        Value::Null => None,
                        w => {
                            let w = as_obj(w)?;
                            let indices = as_arr(field(w, "indices")?)?
                                .iter()
                                .map(|i| as_str(i)?.parse().map_err(|e: crate::lie::LieError| bad(e.to_string())))
                                .collect::<Result<Vec<_>, _>>()?;
                            Some(Witness { indices, value: as_str(field(w, "value")?)?.to_string() })
                        }
                    };
                    Ok(Verdict {
                        identity: as_str(field(v, "identity")?)?.to_string(),
                        pass: field(v, "pass")?.as_bool().ok_or_else(|| bad("pass must be a boolean"))?,
                        witness,
                    })
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Ok(Document::Verdicts(vs))
        }
        other => Err(IoError::Schema(format!("unknown kind {other:?}"))),
    }
}
