use serde_json::{json, Value as Json};

use crate::arith::{Mat2, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Scalar(Rational),
    Matrix(Mat2<Rational>),
}

impl Cell {
    pub fn to_json(&self) -> Json {
        match self {
            Cell::Scalar(r) => json!(r),
            Cell::Matrix(m) => json!(m),
        }
    }

    pub fn plain(&self) -> String {
        match self {
            Cell::Scalar(r) => r.to_string(),
            Cell::Matrix(m) => m.to_string(),
        }
    }

    pub fn csv_fields(&self) -> Vec<String> {
        match self {
            Cell::Scalar(r) => vec![r.to_string()],
            Cell::Matrix(m) => m.entries().iter().map(|e| e.to_string()).collect(),
        }
    }
}

pub fn csv_header(matrix: bool) -> &'static str {
    if matrix {
        "index,e11,e12,e21,e22"
    } else {
        "index,value"
    }
}

pub fn csv_line(fields: impl IntoIterator<Item = String>) -> String {
    let mut s = fields.into_iter().collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

pub fn json_line(v: &Json) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}
