//! JSON and CSV formats: arrangement files, point files, rational-map files
//! and monodromy tables.
//!
//! A field element is a list of `[num, den]` pairs, one per power of the
//! generator. Integers that do not fit in 64 bits are written as strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::poly::Monomial;
use crate::exact::{FieldElement, MultiPoly, NumberField};
use crate::projgeom::{ProjLine, ProjPoint};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(perr(format!("expected an integer, got {n}")))
            }
        }
        Value::String(s) => s.parse().map_err(|_| perr(format!("bad integer string '{s}'"))),
        other => Err(perr(format!("expected an integer, got {other}"))),
    }
}

fn int_to_json(v: &BigInt) -> String {
    match i64::try_from(v) {
        Ok(i) => i.to_string(),
        Err(_) => format!("\"{v}\""),
    }
}

fn pair_from_json(v: &Value) -> Result<(BigInt, BigInt)> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([n, d]) => Ok((int_from_json(n)?, int_from_json(d)?)),
        _ => Err(perr(format!("expected a [num, den] pair, got {v}"))),
    }
}

pub fn field_element_from_json(v: &Value, field: &Arc<NumberField>) -> Result<FieldElement> {
    let arr = v.as_array().ok_or_else(|| perr("field element must be a list of pairs"))?;
    let pairs = arr.iter().map(pair_from_json).collect::<Result<Vec<_>>>()?;
    FieldElement::from_pairs(field, &pairs)
}

/// Compact text of a field element, e.g. `[[1,1],[0,1]]`.
pub fn field_element_to_json(a: &FieldElement) -> String {
    let parts: Vec<String> = a
        .to_pairs()
        .iter()
        .map(|(n, d)| format!("[{},{}]", int_to_json(n), int_to_json(d)))
        .collect();
    format!("[{}]", parts.join(","))
}

fn rational_to_json(q: &BigRational) -> String {
    format!("[{},{}]", int_to_json(q.numer()), int_to_json(q.denom()))
}

pub fn field_from_json(v: &Value) -> Result<Arc<NumberField>> {
    let label = v.get("label").and_then(Value::as_str).ok_or_else(|| perr("field.label missing"))?;
    let mp = v.get("minpoly").and_then(Value::as_array).ok_or_else(|| perr("field.minpoly missing"))?;
    let mut minpoly = Vec::with_capacity(mp.len());
    for c in mp {
        let (n, d) = pair_from_json(c)?;
        if d == BigInt::from(0) {
            return Err(perr("zero denominator in minpoly"));
        }
        minpoly.push(BigRational::new(n, d));
    }
    if let Some(b) = NumberField::builtin(label) {
        if b.minpoly() == minpoly.as_slice() {
            return Ok(b);
        }
    }
    NumberField::new(label, minpoly)
}

pub fn field_to_json(f: &NumberField) -> String {
    let mp: Vec<String> = f.minpoly().iter().map(rational_to_json).collect();
    format!("{{\"label\": {}, \"minpoly\": [{}]}}", json!(f.label()), mp.join(","))
}

fn triple_from_json(v: &Value, field: &Arc<NumberField>, what: &str) -> Result<[FieldElement; 3]> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([a, b, c]) => Ok([
            field_element_from_json(a, field)?,
            field_element_from_json(b, field)?,
            field_element_from_json(c, field)?,
        ]),
        _ => Err(perr(format!("{what} must have 3 coordinates"))),
    }
}

fn triple_to_json(c: &[FieldElement]) -> String {
    let parts: Vec<String> = c.iter().map(field_element_to_json).collect();
    format!("[{}]", parts.join(","))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub label: String,
    pub source: String,
}

impl Metadata {
    pub fn new(label: &str, source: &str) -> Self {
        Metadata { label: label.into(), source: source.into() }
    }

    fn from_json(v: Option<&Value>) -> Metadata {
        let get = |k: &str| {
            v.and_then(|m| m.get(k)).and_then(Value::as_str).unwrap_or_default().to_string()
        };
        Metadata { label: get("label"), source: get("source") }
    }

    fn to_json(&self) -> String {
        format!("{{\"label\": {}, \"source\": {}}}", json!(self.label), json!(self.source))
    }
}

/// Normalizes a conic so that its first nonzero coefficient is 1.
pub fn normalize_conic(c: &[FieldElement; 6]) -> Result<[FieldElement; 6]> {
    let lead = c.iter().find(|v| !v.is_zero()).ok_or(Error::ZeroTriple)?;
    let inv = lead.inv()?;
    Ok(c.clone().map(|v| &v * &inv))
}

/// Lines (and optionally conics) over a field, with provenance metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementFile {
    pub field: Arc<NumberField>,
    pub lines: Vec<ProjLine>,
    pub conics: Vec<[FieldElement; 6]>,
    pub metadata: Metadata,
}

impl ArrangementFile {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let field = field_from_json(v.get("field").ok_or_else(|| perr("missing 'field'"))?)?;
        let mut lines = Vec::new();
        if let Some(ls) = v.get("lines") {
            for l in ls.as_array().ok_or_else(|| perr("'lines' must be a list"))? {
                lines.push(ProjLine::new(triple_from_json(l, &field, "line")?)?);
            }
        }
        let mut conics = Vec::new();
        if let Some(cs) = v.get("conics") {
            for c in cs.as_array().ok_or_else(|| perr("'conics' must be a list"))? {
                let arr = c.as_array().filter(|a| a.len() == 6).ok_or_else(|| perr("conic must have 6 coefficients"))?;
                let mut co = Vec::with_capacity(6);
                for x in arr {
                    co.push(field_element_from_json(x, &field)?);
                }
                let co: [FieldElement; 6] = co.try_into().expect("length checked");
                conics.push(normalize_conic(&co)?);
            }
        }
        Ok(ArrangementFile { field, lines, conics, metadata: Metadata::from_json(v.get("metadata")) })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical text: normalized components, one per row, input order kept.
    pub fn to_canonical_string(&self) -> String {
        let mut s = String::from("{\n");
        let _ = writeln!(s, "  \"field\": {},", field_to_json(&self.field));
        let rows = |items: Vec<String>| -> String {
            if items.is_empty() {
                "[]".into()
            } else {
                format!("[\n    {}\n  ]", items.join(",\n    "))
            }
        };
        let lines: Vec<String> = self.lines.iter().map(|l| triple_to_json(l.coeffs())).collect();
        let _ = writeln!(s, "  \"lines\": {},", rows(lines));
        if !self.conics.is_empty() {
            let conics: Vec<String> = self.conics.iter().map(|c| triple_to_json(c)).collect();
            let _ = writeln!(s, "  \"conics\": {},", rows(conics));
        }
        let _ = writeln!(s, "  \"metadata\": {}", self.metadata.to_json());
        s.push_str("}\n");
        s
    }

    pub fn conic_polys(&self) -> Vec<MultiPoly> {
        self.conics.iter().map(MultiPoly::conic).collect()
    }

    pub fn from_arrangement(arr: &crate::arrangement::Arrangement, source: &str) -> Self {
        ArrangementFile {
            field: arr.field().clone(),
            lines: arr.lines().to_vec(),
            conics: Vec::new(),
            metadata: Metadata::new(arr.label(), source),
        }
    }

    /// The line part as an arrangement; fails when conics are present.
    pub fn to_arrangement(&self) -> Result<crate::arrangement::Arrangement> {
        if !self.conics.is_empty() {
            return Err(perr("file contains conics; a line arrangement was expected"));
        }
        crate::arrangement::Arrangement::build(&self.field, self.lines.clone(), &self.metadata.label)
    }
}

/// A list of projective points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointsFile {
    pub field: Arc<NumberField>,
    pub points: Vec<ProjPoint>,
    pub metadata: Metadata,
}

impl PointsFile {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let field = field_from_json(v.get("field").ok_or_else(|| perr("missing 'field'"))?)?;
        let arr = v.get("points").and_then(Value::as_array).ok_or_else(|| perr("missing 'points'"))?;
        let points = arr
            .iter()
            .map(|p| ProjPoint::new(triple_from_json(p, &field, "point")?))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointsFile { field, points, metadata: Metadata::from_json(v.get("metadata")) })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_canonical_string(&self) -> String {
        let pts: Vec<String> = self.points.iter().map(|p| triple_to_json(p.coords())).collect();
        format!(
            "{{\n  \"field\": {},\n  \"points\": [\n    {}\n  ],\n  \"metadata\": {}\n}}\n",
            field_to_json(&self.field),
            pts.join(",\n    "),
            self.metadata.to_json()
        )
    }
}

/// Three homogeneous components of a rational map of the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapFile {
    pub field: Arc<NumberField>,
    pub components: [MultiPoly; 3],
    pub metadata: Metadata,
}

impl MapFile {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let field = field_from_json(v.get("field").ok_or_else(|| perr("missing 'field'"))?)?;
        let comps = v.get("components").and_then(Value::as_array).ok_or_else(|| perr("missing 'components'"))?;
        if comps.len() != 3 {
            return Err(perr("a plane map needs exactly 3 components"));
        }
        let mut out = Vec::with_capacity(3);
        for comp in comps {
            let terms = comp.as_array().ok_or_else(|| perr("component must be a term list"))?;
            let mut parsed = Vec::with_capacity(terms.len());
            for t in terms {
                let (m, c) = match t.as_array().map(|a| a.as_slice()) {
                    Some([m, c]) => (m, c),
                    _ => return Err(perr("term must be [[i,j,k], coefficient]")),
                };
                let exps = m.as_array().filter(|a| a.len() == 3).ok_or_else(|| perr("bad exponent triple"))?;
                let mut mono: Monomial = [0; 3];
                for (slot, e) in mono.iter_mut().zip(exps) {
                    *slot = e.as_u64().and_then(|x| u16::try_from(x).ok()).ok_or_else(|| perr("bad exponent"))?;
                }
                parsed.push((mono, field_element_from_json(c, &field)?));
            }
            out.push(MultiPoly::from_terms(&field, parsed)?);
        }
        let components: [MultiPoly; 3] = out.try_into().expect("length checked");
        Ok(MapFile { field, components, metadata: Metadata::from_json(v.get("metadata")) })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_canonical_string(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|p| {
                let terms: Vec<String> = p
                    .terms()
                    .iter()
                    .rev()
                    .map(|(m, c)| format!("[[{},{},{}],{}]", m[0], m[1], m[2], field_element_to_json(c)))
                    .collect();
                format!("[\n      {}\n    ]", terms.join(",\n      "))
            })
            .collect();
        format!(
            "{{\n  \"field\": {},\n  \"components\": [\n    {}\n  ],\n  \"metadata\": {}\n}}\n",
            field_to_json(&self.field),
            comps.join(",\n    "),
            self.metadata.to_json()
        )
    }
}

/// Reads a two-column `q,n2` table; a header line is optional.
pub fn parse_table_csv(text: &str) -> Result<BTreeMap<usize, i64>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 2 {
            return Err(perr(format!("line {}: expected two columns", lineno + 1)));
        }
        match (cols[0].parse::<usize>(), cols[1].parse::<i64>()) {
            (Ok(q), Ok(n)) => {
                if out.insert(q, n).is_some() {
                    return Err(perr(format!("line {}: duplicate q = {q}", lineno + 1)));
                }
            }
            _ if lineno == 0 => continue,
            _ => return Err(perr(format!("line {}: expected integers", lineno + 1))),
        }
    }
    Ok(out)
}
