//! The graph JSON schema.
//!
//! ```json
//! {"k": 2, "vertices": ["v0", "v1"], "matrices": [[[0, 1], [1, 0]], ...]}
//! ```
//!
//! `matrices[i][v][w]` counts the colour-`i` edges with range `v` and source
//! `w`. Entries are arbitrary-precision integers, accepted both as JSON
//! numbers (parsed exactly, never through a float) and as decimal strings;
//! emission uses plain numbers while the value fits `i64` and decimal
//! strings beyond that.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use kgraph_core::matrix::IntMatrix;
use kgraph_core::KGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError(pub String);

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "graph schema error: {}", self.0)
    }
}

impl std::error::Error for SchemaError {}

/// Raw parse result, prior to graph validation.
pub struct RawGraph {
    pub k: usize,
    pub vertices: Vec<String>,
    pub matrices: Vec<IntMatrix>,
}

fn err(msg: impl Into<String>) -> SchemaError {
    SchemaError(msg.into())
}

fn parse_entry(v: &Value) -> Result<BigInt, SchemaError> {
    match v {
        // with arbitrary_precision the literal digits are preserved
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| err(format!("matrix entry {n} is not an integer"))),
        Value::String(s) => BigInt::from_str(s.trim())
            .map_err(|_| err(format!("matrix entry {s:?} is not a decimal integer"))),
        other => Err(err(format!("matrix entry must be an integer, got {other}"))),
    }
}

pub fn parse_graph(text: &str) -> Result<RawGraph, SchemaError> {
    let value: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| err("top level must be an object"))?;

    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("field \"k\" must be a nonnegative integer"))? as usize;
    let vertices: Vec<String> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| err("field \"vertices\" must be an array"))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_owned)
                .ok_or_else(|| err("vertex ids must be strings"))
        })
        .collect::<Result<_, _>>()?;

    let raw_matrices = obj
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or_else(|| err("field \"matrices\" must be an array"))?;
    let mut matrices = Vec::with_capacity(raw_matrices.len());
    for (i, m) in raw_matrices.iter().enumerate() {
        let rows = m
            .as_array()
            .ok_or_else(|| err(format!("matrix {i} must be an array of rows")))?;
        let mut parsed_rows = Vec::with_capacity(rows.len());
        for r in rows {
            let cells = r
                .as_array()
                .ok_or_else(|| err(format!("matrix {i} rows must be arrays")))?;
            parsed_rows.push(
                cells
                    .iter()
                    .map(parse_entry)
                    .collect::<Result<Vec<BigInt>, _>>()?,
            );
        }
        matrices.push(
            IntMatrix::from_rows(parsed_rows)
                .map_err(|_| err(format!("matrix {i} has ragged rows")))?,
        );
    }
    Ok(RawGraph {
        k,
        vertices,
        matrices,
    })
}

pub fn bigint_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(bigint_value).collect()))
            .collect(),
    )
}

pub fn graph_to_value(g: &KGraph) -> Value {
    let mut obj = Map::new();
    obj.insert("k".into(), json!(g.rank()));
    obj.insert("vertices".into(), json!(g.vertices()));
    obj.insert(
        "matrices".into(),
        Value::Array(g.matrices().iter().map(matrix_value).collect()),
    );
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_numbers_and_strings() {
        let raw = r#"{"k": 1, "vertices": ["a", "b"],
                      "matrices": [[[1, "2"], ["123456789012345678901234567890", 0]]]}"#;
        let g = parse_graph(raw).unwrap();
        assert_eq!(g.k, 1);
        assert_eq!(g.vertices, vec!["a", "b"]);
        assert_eq!(g.matrices[0][(0, 1)], BigInt::from(2));
        assert_eq!(
            g.matrices[0][(1, 0)].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn rejects_floats_and_ragged_rows() {
        assert!(parse_graph(r#"{"k":1,"vertices":["a"],"matrices":[[[1.5]]]}"#).is_err());
        assert!(parse_graph(r#"{"k":1,"vertices":["a","b"],"matrices":[[[1],[1,2]]]}"#).is_err());
        assert!(parse_graph("not json").is_err());
    }

    #[test]
    fn round_trips_through_the_emitter() {
        let g = KGraph::from_entries(&[vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]]])
            .unwrap();
        let text = serde_json::to_string(&graph_to_value(&g)).unwrap();
        let raw = parse_graph(&text).unwrap();
        let g2 = KGraph::validate(raw.k, raw.vertices, raw.matrices).unwrap();
        assert_eq!(g, g2);
    }
}
