//! JSON exchange format.
//!
//! ```json
//! { "n": 2, "m": 1, "field": "rational", "name": "example",
//!   "brackets": [ { "left": "x1", "right": "x1", "value": [["x2", "1/1"]] } ] }
//! ```
//!
//! Labels are `x<i>` / `y<j>`, 1-based. Omitted brackets are zero.
//! Rationals are `"p/q"` strings, complex numbers `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{BasisIndex, GradedMap, SuperAlgebra};
use crate::catalog::{HeadRows, Skeleton};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Rational, Scalar};

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraDoc {
    n: usize,
    m: usize,
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default)]
    brackets: Vec<BracketDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BracketDoc {
    left: String,
    right: String,
    value: Vec<(String, Value)>,
}

pub fn to_json<F: Scalar>(a: &SuperAlgebra<F>) -> Value {
    let brackets = a
        .entries()
        .map(|(l, r, v)| BracketDoc {
            left: l.to_string(),
            right: r.to_string(),
            value: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (BasisIndex::from_flat(k, a.n()).to_string(), x.to_json()))
                .collect(),
        })
        .collect();
    let doc = AlgebraDoc {
        n: a.n(),
        m: a.m(),
        field: F::FIELD.as_str().into(),
        name: a.name().map(str::to_owned),
        brackets,
    };
    serde_json::to_value(doc).expect("algebra document serializes")
}

/// Pretty-printed JSON document.
pub fn serialize<F: Scalar>(a: &SuperAlgebra<F>) -> String {
    serde_json::to_string_pretty(&to_json(a)).expect("algebra document serializes")
}

/// Parses a document whose `field` must match `F`.
pub fn parse<F: Scalar>(text: &str) -> Result<SuperAlgebra<F>> {
    let doc: AlgebraDoc = read_doc(text)?;
    let field: FieldKind = doc
        .field
        .parse()
        .map_err(|e: String| located(text, "field", e))?;
    if field != F::FIELD {
        return Err(Error::BackendMismatch {
            expected: F::FIELD.to_string(),
            found: field.to_string(),
        });
    }
    build(text, doc)
}

/// An algebra over whichever field the document declares.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyAlgebra {
    Rational(SuperAlgebra<Rational>),
    Complex(SuperAlgebra<Complex64>),
}

pub fn parse_any(text: &str) -> Result<AnyAlgebra> {
    let doc: AlgebraDoc = read_doc(text)?;
    match doc
        .field
        .parse::<FieldKind>()
        .map_err(|e| located(text, "field", e))?
    {
        FieldKind::Rational => build(text, doc).map(AnyAlgebra::Rational),
        FieldKind::Complex => build(text, doc).map(AnyAlgebra::Complex),
    }
}

fn read_doc<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Attaches the position of the first occurrence of `needle` to `message`.
fn located(text: &str, needle: &str, message: impl Into<String>) -> Error {
    let quoted = format!("\"{needle}\"");
    let (line, column) = text
        .find(&quoted)
        .map(|offset| {
            let before = &text[..offset];
            let line = before.matches('\n').count() + 1;
            let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
            (line, column)
        })
        .unwrap_or((0, 0));
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn label(text: &str, s: &str, n: usize, m: usize) -> Result<BasisIndex> {
    let idx = BasisIndex::parse_label(s)
        .ok_or_else(|| located(text, s, format!("bad basis label `{s}`")))?;
    if !idx.in_range(n, m) {
        return Err(located(
            text,
            s,
            format!("label `{s}` out of range for (n, m) = ({n}, {m})"),
        ));
    }
    Ok(idx)
}

fn build<F: Scalar>(text: &str, doc: AlgebraDoc) -> Result<SuperAlgebra<F>> {
    let (n, m) = (doc.n, doc.m);
    let mut entries = Vec::with_capacity(doc.brackets.len());
    for b in &doc.brackets {
        let left = label(text, &b.left, n, m)?;
        let right = label(text, &b.right, n, m)?;
        let mut value = vec![F::zero(); n + m];
        for (lab, coeff) in &b.value {
            let idx = label(text, lab, n, m)?;
            let c = F::from_json(coeff).map_err(|e| located(text, lab, e))?;
            let slot = &mut value[idx.flat(n)];
            *slot = slot.clone() + c;
        }
        entries.push((left, right, value));
    }
    let a = SuperAlgebra::new(n, m, entries).map_err(|e| match e {
        Error::DuplicateEntry(l, r) => located(
            text,
            &l.to_string(),
            format!("duplicate bracket [{l}, {r}]"),
        ),
        other => other,
    })?;
    Ok(match doc.name {
        Some(name) => a.with_name(name),
        None => a,
    })
}

// ---- graded maps ----

#[derive(Debug, Serialize, Deserialize)]
struct MapDoc {
    field: String,
    even: Vec<Vec<Value>>,
    odd: Vec<Vec<Value>>,
}

/// `{ "field": ..., "even": [[..rows..]], "odd": [[..rows..]] }`; column `k`
/// of each block is the image of the `k`-th basis element of that part.
pub fn map_to_json<F: Scalar>(t: &GradedMap<F>) -> Value {
    let rows = |mat: &Matrix<F>| -> Vec<Vec<Value>> {
        mat.to_rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_json).collect())
            .collect()
    };
    serde_json::to_value(MapDoc {
        field: F::FIELD.as_str().into(),
        even: rows(&t.even),
        odd: rows(&t.odd),
    })
    .expect("map document serializes")
}

pub fn parse_map<F: Scalar>(text: &str) -> Result<GradedMap<F>> {
    let doc: MapDoc = read_doc(text)?;
    let field: FieldKind = doc
        .field
        .parse()
        .map_err(|e: String| located(text, "field", e))?;
    if field != F::FIELD {
        return Err(Error::BackendMismatch {
            expected: F::FIELD.to_string(),
            found: field.to_string(),
        });
    }
    let block = |rows: &[Vec<Value>], key: &str| -> Result<Matrix<F>> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(F::from_json)
                    .collect::<std::result::Result<Vec<F>, String>>()
            })
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(|e| located(text, key, e))?;
        if parsed.is_empty() {
            return Ok(Matrix::zeros(0, 0));
        }
        Matrix::from_rows(parsed)
    };
    GradedMap::new(block(&doc.even, "even")?, block(&doc.odd, "odd")?)
}

#[derive(Debug, Serialize, Deserialize)]
struct SkeletonDoc {
    n: usize,
    parts: Vec<usize>,
    field: String,
    heads: Vec<HeadDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct HeadDoc {
    alpha: Vec<Vec<Value>>,
    beta: Vec<Vec<Value>>,
}

/// `{ "n", "parts", "field", "heads": [{ "alpha": [[..]], "beta": [[..]] }] }`
/// with one head per part. `alpha` rows hold the `y_2..y_m` coordinates of
/// `[x_i, y_head]`, `beta` rows the `x_2..x_n` coordinates of `[y_j, y_head]`.
pub fn skeleton_to_json<F: Scalar>(s: &Skeleton<F>) -> Value {
    let rows = |r: &[Vec<F>]| -> Vec<Vec<Value>> {
        r.iter()
            .map(|row| row.iter().map(Scalar::to_json).collect())
            .collect()
    };
    serde_json::to_value(SkeletonDoc {
        n: s.n(),
        parts: s.parts().to_vec(),
        field: F::FIELD.as_str().into(),
        heads: s
            .heads()
            .iter()
            .map(|h| HeadDoc {
                alpha: rows(&h.alpha),
                beta: rows(&h.beta),
            })
            .collect(),
    })
    .expect("skeleton document serializes")
}

pub fn parse_skeleton<F: Scalar>(text: &str) -> Result<Skeleton<F>> {
    let doc: SkeletonDoc = read_doc(text)?;
    let field: FieldKind = doc
        .field
        .parse()
        .map_err(|e: String| located(text, "field", e))?;
    if field != F::FIELD {
        return Err(Error::BackendMismatch {
            expected: F::FIELD.to_string(),
            found: field.to_string(),
        });
    }
    let rows = |r: &[Vec<Value>], key: &str| -> Result<Vec<Vec<F>>> {
        r.iter()
            .map(|row| {
                row.iter()
                    .map(F::from_json)
                    .collect::<std::result::Result<Vec<F>, String>>()
            })
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(|e| located(text, key, e))
    };
    let heads = doc
        .heads
        .iter()
        .map(|h| {
            Ok(HeadRows {
                alpha: rows(&h.alpha, "alpha")?,
                beta: rows(&h.beta, "beta")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Skeleton::new(doc.n, doc.parts, heads)
}

/// Parses a JSON array of scalars, e.g. `["1/2", "-3"]`.
pub fn parse_scalar_list<F: Scalar>(text: &str) -> Result<Vec<F>> {
    let values: Vec<Value> = read_doc(text)?;
    values
        .iter()
        .map(|v| F::from_json(v).map_err(Error::parse))
        .collect()
}

/// Parses a JSON array of scalar rows, e.g. `[["1", "0"], ["2/3"]]`.
pub fn parse_scalar_rows<F: Scalar>(text: &str) -> Result<Vec<Vec<F>>> {
    let rows: Vec<Vec<Value>> = read_doc(text)?;
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| F::from_json(v).map_err(Error::parse))
                .collect()
        })
        .collect()
}
