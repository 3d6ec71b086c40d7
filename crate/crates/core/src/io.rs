//! JSON documents, schema "pf-1".
//!
//! Coefficients are strings `"p/q"`, or `["re", "im"]` pairs for non-real
//! values. Every document carries `"schema"` and `"type"`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{PfError, Result};
use crate::field::Gq;
use crate::homogeneous::{HomElem, VGammaElem};
use crate::hpoly::HPoly;
use crate::rank::Morphism;
use crate::series::{RamifiedSeries, TruncatedSeries};
use crate::weierstrass::MonicPoly;

pub const SCHEMA: &str = "pf-1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Real(String),
    Complex([String; 2]),
}

impl CoeffJson {
    pub fn of(c: &Gq) -> Self {
        if c.is_real() {
            CoeffJson::Real(Gq::rational_string(&c.re))
        } else {
            CoeffJson::Complex([Gq::rational_string(&c.re), Gq::rational_string(&c.im)])
        }
    }

    pub fn value(&self) -> Result<Gq> {
        match self {
            CoeffJson::Int(n) => Ok(Gq::int(*n)),
            CoeffJson::Real(s) => Gq::parse_pair(s, "0").ok_or_else(|| bad(format!("bad coefficient '{s}'"))),
            CoeffJson::Complex([a, b]) => {
                Gq::parse_pair(a, b).ok_or_else(|| bad(format!("bad coefficient ['{a}', '{b}']")))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub c: CoeffJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SeriesJson {
    pub nvars: usize,
    pub cap: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HPolyJson {
    pub nvars: usize,
    pub degree: u32,
    pub terms: Vec<TermJson>,
}

/// `y^d + a_1 y^{d−1} + … + a_d`, coefficients `a_1 … a_d`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MonicJson {
    pub nvars: usize,
    pub cap: u32,
    pub coeffs: Vec<Vec<TermJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MorphismJson {
    pub nvars: usize,
    pub cap: u32,
    pub components: Vec<Vec<TermJson>>,
}

/// Every document the command line reads.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Input {
    Series(SeriesJson),
    Monic(MonicJson),
    Morphism(MorphismJson),
    Pair { p: MonicJson, q: MonicJson },
    FormPair { h: HPolyJson, b: HPolyJson, rho: Option<String> },
}

fn bad(msg: String) -> PfError {
    PfError::InvalidInput(msg)
}

fn terms_of<'a>(it: impl Iterator<Item = (&'a Vec<u32>, &'a Gq)>) -> Vec<TermJson> {
    it.map(|(e, c)| TermJson { exp: e.clone(), c: CoeffJson::of(c) }).collect()
}

fn read_terms(nvars: usize, ts: &[TermJson]) -> Result<Vec<(Vec<u32>, Gq)>> {
    ts.iter()
        .map(|t| {
            if t.exp.len() != nvars {
                return Err(PfError::VarCountMismatch(t.exp.len(), nvars));
            }
            Ok((t.exp.clone(), t.c.value()?))
        })
        .collect()
}

pub fn series_json(f: &TruncatedSeries) -> SeriesJson {
    SeriesJson { nvars: f.nvars(), cap: f.cap(), terms: terms_of(f.terms()) }
}

pub fn series_from(j: &SeriesJson) -> Result<TruncatedSeries> {
    TruncatedSeries::from_terms(j.nvars, j.cap, read_terms(j.nvars, &j.terms)?)
}

pub fn hpoly_json(f: &HPoly) -> HPolyJson {
    HPolyJson { nvars: f.nvars(), degree: f.degree(), terms: terms_of(f.terms().iter()) }
}

pub fn hpoly_from(j: &HPolyJson) -> Result<HPoly> {
    HPoly::from_terms(j.nvars, j.degree, read_terms(j.nvars, &j.terms)?).map_err(bad)
}

pub fn monic_json(p: &MonicPoly) -> MonicJson {
    MonicJson { nvars: p.nvars(), cap: p.cap(), coeffs: p.coeffs().iter().map(|a| terms_of(a.terms())).collect() }
}

pub fn monic_from(j: &MonicJson) -> Result<MonicPoly> {
    if j.coeffs.is_empty() {
        return Err(bad("monic polynomial of degree 0".into()));
    }
    let cs = j
        .coeffs
        .iter()
        .map(|ts| TruncatedSeries::from_terms(j.nvars, j.cap, read_terms(j.nvars, ts)?))
        .collect::<Result<Vec<_>>>()?;
    MonicPoly::new(cs)
}

pub fn morphism_json(phi: &Morphism) -> MorphismJson {
    MorphismJson {
        nvars: phi.target_vars(),
        cap: phi.cap(),
        components: phi.components().iter().map(|a| terms_of(a.terms())).collect(),
    }
}

pub fn morphism_from(j: &MorphismJson) -> Result<Morphism> {
    let cs = j
        .components
        .iter()
        .map(|ts| TruncatedSeries::from_terms(j.nvars, j.cap, read_terms(j.nvars, ts)?))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(cs)
}

pub fn ramified_json(r: &RamifiedSeries) -> Value {
    json!({"ram": r.ram, "base": series_json(&r.base)})
}

pub fn gamma_json(g: &HomElem) -> Value {
    json!({
        "degree": g.degree(),
        "omega": g.omega().to_string(),
        "coeffs": g.coeffs().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

/// Coefficients of `1, γ, γ², …`, each a list of homogeneous fractions by degree.
pub fn vgamma_json(x: &VGammaElem) -> Value {
    let cs: Vec<Value> = x
        .coeffs()
        .iter()
        .map(|c| Value::Array(c.comps.iter().map(|(k, f)| json!({"degree": k, "value": f.to_string()})).collect()))
        .collect();
    json!({"cap": x.cap().to_string(), "coeffs": cs})
}

/// Wraps a body into a document of the given type.
pub fn document(kind: &str, body: impl Serialize) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::String(SCHEMA.into()));
    m.insert("type".into(), Value::String(kind.into()));
    match serde_json::to_value(body).expect("serializable") {
        Value::Object(b) => {
            for (k, v) in b {
                if k != "type" {
                    m.insert(k, v);
                }
            }
        }
        v => {
            m.insert("value".into(), v);
        }
    }
    Value::Object(m)
}

pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

/// Parses any document, checking the schema string.
pub fn parse_document(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| bad(format!("malformed JSON at line {}, column {}: {}", e.line(), e.column(), e)))?;
    match v.get("schema").and_then(|s| s.as_str()) {
        Some(SCHEMA) => Ok(v),
        Some(s) => Err(bad(format!("unsupported schema '{s}'"))),
        None => Err(bad("missing schema".into())),
    }
}

pub fn parse_input(text: &str) -> Result<Input> {
    let v = parse_document(text)?;
    serde_json::from_value(v).map_err(|e| bad(format!("bad document: {e}")))
}

pub fn series_doc(f: &TruncatedSeries) -> Value {
    document("series", series_json(f))
}

pub fn monic_doc(p: &MonicPoly) -> Value {
    document("monic", monic_json(p))
}

pub fn morphism_doc(phi: &Morphism) -> Value {
    document("morphism", morphism_json(phi))
}

pub fn pair_doc(p: &MonicPoly, q: &MonicPoly) -> Value {
    document("pair", json!({"p": monic_json(p), "q": monic_json(q)}))
}

pub fn form_pair_doc(h: &HPoly, b: &HPoly, rho: Option<&str>) -> Value {
    document("form-pair", json!({"h": hpoly_json(h), "b": hpoly_json(b), "rho": rho}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_round_trip() {
        let mut a = TruncatedSeries::zero(2, 9);
        a.add_term(vec![1, 1], Gq::frac(-3, 2));
        a.add_term(vec![4, 0], Gq::gauss(0, 1));
        let p = MonicPoly::new(vec![TruncatedSeries::zero(2, 9), a]).unwrap();
        let text = render(&monic_doc(&p));
        match parse_input(&text).unwrap() {
            Input::Monic(m) => assert_eq!(monic_from(&m).unwrap(), p),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_reports_position() {
        let e = parse_input("{\n  \"schema\": \"pf-1\",\n  oops\n}").unwrap_err();
        assert!(e.to_string().contains("line 3, column 3"), "{e}");
        assert!(parse_input("{\"schema\": \"pf-0\", \"type\": \"series\"}").is_err());
    }
}
