//! JSON interchange format.
//!
//! A matrix is `{"rows": r, "cols": c, "entries": [[...], ...]}`. Each entry
//! is a string `"p/q"` or `"p"` for a real rational, or
//! `{"re": "p/q", "im": "p/q"}` for a complex one. A pair document is
//! `{"A": matrix, "H": matrix, "name"?: str, "source"?: str}`. Emission
//! always uses canonical reduced fractions and the string form for reals.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::elim::is_invertible;
use crate::krein::{Classification, HPair};
use crate::matrix::Matrix;
use crate::oracle::PlantedPair;
use crate::scalar::{GaussianRational, Rational};
use crate::structure::{Decomposition, Dims, SelfadjointDecomposition, UnitaryCompression, VerificationReport};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterchangeError {
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },

    #[error("{location}: missing field {field:?}")]
    MissingField { location: String, field: &'static str },

    #[error("{location}: invalid scalar: {detail}")]
    InvalidScalar { location: String, detail: String },

    #[error("{location}: {detail}")]
    Shape { location: String, detail: String },

    #[error("{location}: matrix is not Hermitian")]
    NotHermitian { location: String },

    #[error("{location}: matrix is singular")]
    Singular { location: String },
}

impl InterchangeError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            InterchangeError::Json { .. } => "malformed-json",
            InterchangeError::MissingField { .. } => "missing-field",
            InterchangeError::InvalidScalar { .. } => "invalid-scalar",
            InterchangeError::Shape { .. } => "shape-mismatch",
            InterchangeError::NotHermitian { .. } => "not-hermitian",
            InterchangeError::Singular { .. } => "singular",
        }
    }
}

type IResult<T> = std::result::Result<T, InterchangeError>;

/// A validated pair plus optional metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDocument {
    pub pair: HPair,
    pub name: Option<String>,
    pub source: Option<String>,
}

fn parse_json(bytes: &[u8]) -> IResult<Value> {
    serde_json::from_slice(bytes).map_err(|e| InterchangeError::Json {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

fn shape_err(location: &str, detail: impl Into<String>) -> InterchangeError {
    InterchangeError::Shape {
        location: location.to_string(),
        detail: detail.into(),
    }
}

fn rational_from_value(v: &Value, location: &str) -> IResult<Rational> {
    let bad = |detail: String| InterchangeError::InvalidScalar {
        location: location.to_string(),
        detail,
    };
    match v {
        Value::String(s) => s.parse::<Rational>().map_err(|e| bad(e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i)),
            None => Err(bad(format!("{n} is not an integer; write fractions as strings"))),
        },
        other => Err(bad(format!("expected a string, got {other}"))),
    }
}

pub fn scalar_from_value(v: &Value, location: &str) -> IResult<GaussianRational> {
    match v {
        Value::Object(obj) => {
            let part = |key: &'static str| -> IResult<Rational> {
                match obj.get(key) {
                    Some(x) => rational_from_value(x, &format!("{location}.{key}")),
                    None => Ok(Rational::zero()),
                }
            };
            if obj.keys().any(|k| k != "re" && k != "im") {
                return Err(InterchangeError::InvalidScalar {
                    location: location.to_string(),
                    detail: "complex entries take only \"re\" and \"im\"".into(),
                });
            }
            Ok(GaussianRational::new(part("re")?, part("im")?))
        }
        other => Ok(GaussianRational::real(rational_from_value(other, location)?)),
    }
}

pub fn scalar_to_value(z: &GaussianRational) -> Value {
    if z.is_real() {
        Value::String(z.re.to_string())
    } else {
        json!({ "re": z.re.to_string(), "im": z.im.to_string() })
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &'static str, location: &str) -> IResult<&'a Value> {
    obj.get(key).ok_or_else(|| InterchangeError::MissingField {
        location: location.to_string(),
        field: key,
    })
}

fn count(v: &Value, location: &str) -> IResult<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| shape_err(location, "expected a nonnegative integer"))
}

pub fn matrix_from_value(v: &Value, location: &str) -> IResult<Matrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| shape_err(location, "expected a matrix object"))?;
    let rows = count(field(obj, "rows", location)?, &format!("{location}.rows"))?;
    let cols = count(field(obj, "cols", location)?, &format!("{location}.cols"))?;
    let entries_loc = format!("{location}.entries");
    let entries = field(obj, "entries", location)?
        .as_array()
        .ok_or_else(|| shape_err(&entries_loc, "expected an array of rows"))?;
    if entries.len() != rows {
        return Err(shape_err(&entries_loc, format!("{} rows given, \"rows\" says {rows}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row_loc = format!("{entries_loc}[{i}]");
        let row = row
            .as_array()
            .ok_or_else(|| shape_err(&row_loc, "expected an array"))?;
        if row.len() != cols {
            return Err(shape_err(&row_loc, format!("{} entries given, \"cols\" says {cols}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            data.push(scalar_from_value(x, &format!("{row_loc}[{j}]"))?);
        }
    }
    Ok(Matrix::from_vec(rows, cols, data).expect("length checked"))
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(scalar_to_value).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

/// Parses a bare matrix document.
pub fn parse_matrix(bytes: &[u8]) -> IResult<Matrix> {
    matrix_from_value(&parse_json(bytes)?, "$")
}

/// Parses and validates a pair document.
pub fn parse_pair(bytes: &[u8]) -> IResult<PairDocument> {
    let v = parse_json(bytes)?;
    pair_from_value(&v, "$")
}

pub fn pair_from_value(v: &Value, location: &str) -> IResult<PairDocument> {
    let obj = v
        .as_object()
        .ok_or_else(|| shape_err(location, "expected a pair object"))?;
    let a_loc = format!("{location}.A");
    let h_loc = format!("{location}.H");
    let a = matrix_from_value(field(obj, "A", location)?, &a_loc)?;
    let h = matrix_from_value(field(obj, "H", location)?, &h_loc)?;
    if !a.is_square() {
        return Err(shape_err(&a_loc, format!("A must be square, got {}x{}", a.rows(), a.cols())));
    }
    if h.shape() != a.shape() {
        return Err(shape_err(
            &h_loc,
            format!("H is {}x{} but A is {}x{}", h.rows(), h.cols(), a.rows(), a.cols()),
        ));
    }
    if !h.is_hermitian() {
        return Err(InterchangeError::NotHermitian { location: h_loc });
    }
    if !is_invertible(&h) {
        return Err(InterchangeError::Singular { location: h_loc });
    }
    let text = |key: &str| obj.get(key).and_then(Value::as_str).map(String::from);
    Ok(PairDocument {
        pair: HPair::new(a, h).expect("validated above"),
        name: text("name"),
        source: text("source"),
    })
}

pub fn pair_to_value(doc: &PairDocument) -> Value {
    let mut obj = Map::new();
    if let Some(name) = &doc.name {
        obj.insert("name".into(), Value::String(name.clone()));
    }
    if let Some(source) = &doc.source {
        obj.insert("source".into(), Value::String(source.clone()));
    }
    obj.insert("A".into(), matrix_to_value(doc.pair.a()));
    obj.insert("H".into(), matrix_to_value(doc.pair.h()));
    Value::Object(obj)
}

pub fn dims_to_value(d: Dims) -> Value {
    json!([d.m, d.m1, d.m2, d.m3])
}

pub fn subspace_to_value(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": matrix_to_value(s.basis()) })
}

pub fn report_to_value(r: &VerificationReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let mut o = json!({ "name": c.name, "pass": c.pass });
            if let Some(w) = &c.witness {
                o["witness"] = matrix_to_value(w);
            }
            o
        })
        .collect();
    json!({ "all_pass": r.all_pass(), "checks": checks })
}

pub fn classification_to_value(c: &Classification) -> Value {
    json!({
        "expansive": c.expansive,
        "unitary": c.unitary,
        "selfadjoint": c.selfadjoint,
        "defect_inertia": { "pos": c.defect_inertia.pos, "neg": c.defect_inertia.neg, "zero": c.defect_inertia.zero },
    })
}

pub fn compression_to_value(c: &UnitaryCompression) -> Value {
    json!({
        "A22": matrix_to_value(&c.a22),
        "H22": matrix_to_value(&c.h22),
        "is_unitary_part": c.is_unitary_part,
    })
}

pub fn decomposition_to_value(d: &Decomposition) -> Value {
    let mut blocks = Map::new();
    for i in 1..=4 {
        for j in 1..=4 {
            blocks.insert(format!("A{i}{j}"), matrix_to_value(d.a(i, j)));
        }
    }
    json!({
        "dims": dims_to_value(d.dims),
        "S": matrix_to_value(&d.s),
        "S_inv_A_S": matrix_to_value(&d.a_transformed),
        "S_adj_H_S": matrix_to_value(&d.h_transformed),
        "S_adj_D_S": matrix_to_value(&d.d_transformed),
        "blocks": Value::Object(blocks),
        "H22": matrix_to_value(&d.h22),
        "H44": matrix_to_value(&d.h44),
        "D11": matrix_to_value(&d.d11),
        "D12": matrix_to_value(&d.d12),
        "D22": matrix_to_value(&d.d22),
        "subspaces": {
            "N": subspace_to_value(&d.unobservable),
            "M": subspace_to_value(&d.neutral_core),
            "M1": subspace_to_value(&d.complement),
            "M2": subspace_to_value(&d.partner),
            "M3": subspace_to_value(&d.remainder),
        },
        "compression": compression_to_value(&crate::structure::unitary_compression(d)),
        "report": report_to_value(&d.report),
    })
}

pub fn selfadjoint_to_value(d: &SelfadjointDecomposition) -> Value {
    let mut blocks = Map::new();
    for i in 1..=4 {
        for j in 1..=4 {
            blocks.insert(format!("A{i}{j}"), matrix_to_value(d.a_blocks.get(i, j)));
        }
    }
    json!({
        "dims": dims_to_value(d.dims),
        "S": matrix_to_value(&d.s),
        "S_inv_A_S": matrix_to_value(&d.a_transformed),
        "S_adj_H_S": matrix_to_value(&d.h_transformed),
        "blocks": Value::Object(blocks),
        "H22": matrix_to_value(&d.h22),
        "H44": matrix_to_value(&d.h44),
        "report": report_to_value(&d.report),
    })
}

pub fn planted_to_value(p: &PlantedPair, name: Option<String>) -> Value {
    let doc = PairDocument {
        pair: p.pair.clone(),
        name,
        source: Some("planted".into()),
    };
    let mut v = pair_to_value(&doc);
    v["truth"] = json!({ "dims": dims_to_value(p.dims), "S": matrix_to_value(&p.s_true) });
    v
}
