//! JSON file formats.
//!
//! A matrix is `{"n": 2, "name": "A", "entries": [[1, "-1/2"], [0, 3]]}`.
//! Entries are JSON integers or strings `"p"` / `"p/q"`. `name` is the role
//! tag: `A B U V X Y` for inputs, `C W Z` for outputs, `c w z` for dual
//! arrays and `M` for an untagged matrix.
//!
//! An input file for the three products is a JSON array of six matrix
//! documents named `A` through `Y`, in any order.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bilinear::Mode;
use crate::error::{Error, Result};
use crate::matrix::{Mat, Role};
use crate::scalar::{format_rational, int, parse_rational, Rational};
use crate::triple::{DisjointInputs, TripleResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub n: usize,
    pub name: String,
    pub entries: Vec<Vec<Value>>,
}

fn entry_to_json(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(v) = r.numer().to_i64() {
            return Value::from(v);
        }
    }
    Value::from(format_rational(r))
}

fn entry_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(num) => num.as_i64().map(int).ok_or_else(|| {
            Error::Parse(format!(
                "matrix entry {num} is not an integer; write fractions as \"p/q\""
            ))
        }),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!(
            "matrix entry {other} is neither an integer nor a string"
        ))),
    }
}

impl MatrixDoc {
    pub fn from_mat(m: &Mat<Rational>) -> Self {
        Self {
            n: m.n(),
            name: m.role().tag().to_string(),
            entries: m
                .rows()
                .map(|row| row.iter().map(entry_to_json).collect())
                .collect(),
        }
    }

    pub fn to_mat(&self) -> Result<Mat<Rational>> {
        let role = Role::from_tag(&self.name)?;
        if self.entries.len() != self.n {
            return Err(Error::Parse(format!(
                "matrix `{}` declares n = {} but has {} rows",
                self.name,
                self.n,
                self.entries.len()
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(entry_from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(role, rows)
    }
}

pub fn matrix_to_json(m: &Mat<Rational>) -> Value {
    serde_json::to_value(MatrixDoc::from_mat(m)).expect("matrix documents always serialize")
}

pub fn matrix_from_json(v: &Value) -> Result<Mat<Rational>> {
    let doc: MatrixDoc =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_mat()
}

pub fn inputs_to_json(inputs: &DisjointInputs<Rational>) -> Value {
    Value::Array(inputs.mats().into_iter().map(matrix_to_json).collect())
}

pub fn inputs_from_json(v: &Value) -> Result<DisjointInputs<Rational>> {
    let Value::Array(items) = v else {
        return Err(Error::Parse(
            "input file must be a JSON array of six matrices".into(),
        ));
    };
    let mats = items
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    DisjointInputs::from_mats(mats)
}

pub fn inputs_from_str(s: &str) -> Result<DisjointInputs<Rational>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    inputs_from_json(&v)
}

/// `{"C": …, "W": …, "Z": …, "mult_count": …, "mode": "raw" | "corrected"}`
pub fn triple_result_to_json(result: &TripleResult<Rational>, mode: Mode) -> Value {
    serde_json::json!({
        "C": matrix_to_json(&result.c),
        "W": matrix_to_json(&result.w),
        "Z": matrix_to_json(&result.z),
        "mult_count": result.mult_count,
        "mode": mode.as_str(),
    })
}
