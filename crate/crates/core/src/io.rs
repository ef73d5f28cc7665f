//! Map and piece files.
//!
//! ```json
//! { "n": 2, "A": [["0", "0"], ["0", "0"]], "b": ["2", "0"], "c": ["1", "0"] }
//! ```
//!
//! Entries are strings in the scalar grammar (`"p/q"`, integers, exact
//! decimals); bare JSON numbers are accepted too. `"backend": "float"`
//! selects the float backend. Piece files for `convert` carry only `"A"`
//! and `"c"`.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::pwlmap::PwlMap;
use crate::scalar::{parse_scalar, Rational, Scalar};

/// A map on either backend, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMap {
    Exact(PwlMap<Rational>),
    Float(PwlMap<f64>),
}

impl AnyMap {
    pub fn dim(&self) -> usize {
        match self {
            AnyMap::Exact(m) => m.dim(),
            AnyMap::Float(m) => m.dim(),
        }
    }

    /// Exact view. Floats convert without rounding.
    pub fn to_exact(&self) -> Result<PwlMap<Rational>> {
        match self {
            AnyMap::Exact(m) => Ok(m.clone()),
            AnyMap::Float(m) => m.to_exact(),
        }
    }

    pub fn is_float(&self) -> bool {
        matches!(self, AnyMap::Float(_))
    }
}

/// An affine piece `x -> A x + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece<T> {
    pub a: Matrix<T>,
    pub c: Vector<T>,
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse("json", e.to_string()))
}

fn scalar_at<T: Scalar>(v: &Value, field: &str) -> Result<T> {
    let token = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(Error::parse(field, format!("expected a number or string, got {other}"))),
    };
    parse_scalar(&token).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(field, message),
        e => e,
    })
}

fn vector_at<T: Scalar>(obj: &Value, name: &str, n: Option<usize>) -> Result<Vector<T>> {
    let items = obj
        .get(name)
        .ok_or_else(|| Error::parse(name, "missing field"))?
        .as_array()
        .ok_or_else(|| Error::parse(name, "expected an array"))?;
    if let Some(n) = n {
        if items.len() != n {
            return Err(Error::parse(name, format!("expected {n} entries, got {}", items.len())));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, v)| scalar_at(v, &format!("{name}[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()
        .map(Vector::new)
}

fn matrix_at<T: Scalar>(obj: &Value, name: &str, n: Option<usize>) -> Result<Matrix<T>> {
    let rows = obj
        .get(name)
        .ok_or_else(|| Error::parse(name, "missing field"))?
        .as_array()
        .ok_or_else(|| Error::parse(name, "expected an array of rows"))?;
    let n = n.unwrap_or(rows.len());
    if rows.len() != n {
        return Err(Error::parse(name, format!("expected {n} rows, got {}", rows.len())));
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let field = format!("{name}[{}]", i + 1);
        let row = row.as_array().ok_or_else(|| Error::parse(&field, "expected an array"))?;
        if row.len() != n {
            return Err(Error::parse(&field, format!("expected {n} entries, got {}", row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            data.push(scalar_at(v, &format!("{name}[{}][{}]", i + 1, j + 1))?);
        }
    }
    Matrix::new(n, n, data)
}

fn map_from_value<T: Scalar>(obj: &Value) -> Result<PwlMap<T>> {
    let n = match obj.get("n") {
        None => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| Error::parse("n", format!("expected a positive integer, got {v}")))?
                as usize,
        ),
    };
    let a = matrix_at(obj, "A", n)?;
    let n = a.rows();
    let b = vector_at(obj, "b", Some(n))?;
    let c = vector_at(obj, "c", Some(n))?;
    PwlMap::new(a, b, c)
}

/// Parses a map document on the backend it names.
pub fn parse_map(text: &str) -> Result<AnyMap> {
    let obj = parse_json(text)?;
    if !obj.is_object() {
        return Err(Error::parse("json", "expected an object"));
    }
    match obj.get("backend").map(|v| v.as_str()) {
        None | Some(Some("rational")) => map_from_value(&obj).map(AnyMap::Exact),
        Some(Some("float")) => map_from_value(&obj).map(AnyMap::Float),
        Some(_) => Err(Error::parse("backend", "expected \"float\" or \"rational\"")),
    }
}

/// Parses a map document on the exact backend, whatever it names.
pub fn parse_exact_map(text: &str) -> Result<PwlMap<Rational>> {
    parse_map(text)?.to_exact()
}

pub fn parse_piece<T: Scalar>(text: &str) -> Result<Piece<T>> {
    let obj = parse_json(text)?;
    let a = matrix_at(&obj, "A", None)?;
    let c = vector_at(&obj, "c", Some(a.rows()))?;
    Ok(Piece { a, c })
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Invalid { path: String, source: Error },
}

fn read(path: &Path) -> std::result::Result<String, ReadError> {
    std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_map(path: &Path) -> std::result::Result<AnyMap, ReadError> {
    parse_map(&read(path)?).map_err(|source| ReadError::Invalid {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_piece(path: &Path) -> std::result::Result<Piece<Rational>, ReadError> {
    parse_piece(&read(path)?).map_err(|source| ReadError::Invalid {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Serialize)]
struct MapDoc<'a> {
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    b: Vec<String>,
    c: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    backend: Option<&'a str>,
}

fn strings<T: Scalar>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn map_doc<T: Scalar>(map: &PwlMap<T>) -> MapDoc<'static> {
    let n = map.dim();
    MapDoc {
        n,
        a: (0..n).map(|i| strings(&map.a().as_slice()[i * n..(i + 1) * n])).collect(),
        b: strings(map.b().as_slice()),
        c: strings(map.c().as_slice()),
        backend: (!T::EXACT).then_some("float"),
    }
}

/// Canonical single-line JSON for a map. Re-parses to an equal map.
pub fn map_to_json<T: Scalar>(map: &PwlMap<T>) -> String {
    serde_json::to_string(&map_doc(map)).expect("serializable")
}

/// Indented JSON for a map, as written by the CLI.
pub fn map_to_json_pretty<T: Scalar>(map: &PwlMap<T>) -> String {
    serde_json::to_string_pretty(&map_doc(map)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    const COUNTEREXAMPLE: &str = r#"{ "n": 3, "A": [["-1/2","1","0"],["-1/2","0","0"],["-11/28","0","1"]], "b": ["-1/2","-1","3/28"], "c": ["1","0","0"] }"#;

    #[test]
    fn parses_counterexample() {
        assert_eq!(parse_map(COUNTEREXAMPLE).unwrap(), AnyMap::Exact(counterexample()));
    }

    #[test]
    fn decimals_and_numbers_are_exact() {
        let m = parse_exact_map(r#"{"A": [[0.25, "0"], ["0", 1]], "b": ["0.5", 0], "c": [0, "1e-2"]}"#).unwrap();
        assert_eq!(m.a()[(0, 0)], rq(1, 4));
        assert_eq!(m.b()[0], rq(1, 2));
        assert_eq!(m.c()[1], rq(1, 100));
    }

    #[test]
    fn float_backend() {
        let m = parse_map(r#"{"n": 2, "A": [["1/2","0"],["0","0"]], "b": ["1","0"], "c": ["0","0"], "backend": "float"}"#)
            .unwrap();
        let AnyMap::Float(f) = &m else { panic!("expected float map") };
        assert_eq!(f.a()[(0, 0)], 0.5);
        assert_eq!(parse_map(&map_to_json(f)).unwrap(), m);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = COUNTEREXAMPLE.replace("\"0\",\"0\"],[\"-11", "\"x\",\"0\"],[\"-11");
        match parse_map(&bad) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "A[2][2]"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_map(r#"{"n": 2, "A": [["1","0"],["0","0"]], "b": ["1"], "c": ["0","0"]}"#) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "b"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_map("{\n  \"n\": 2,\n  \"A\": [[\n") {
            Err(Error::Parse { field, message }) => {
                assert_eq!(field, "json");
                assert!(message.contains("line"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_one_dimensional_maps() {
        assert_eq!(
            parse_map(r#"{"n": 1, "A": [["1"]], "b": ["1"], "c": ["0"]}"#),
            Err(Error::DimensionTooSmall(1))
        );
    }

    #[test]
    fn json_round_trip() {
        let f = counterexample();
        let text = map_to_json(&f);
        assert!(text.starts_with(r#"{"n":3,"A":[["-1/2","1","0"]"#), "{text}");
        assert_eq!(parse_exact_map(&text).unwrap(), f);
        assert_eq!(parse_exact_map(&map_to_json_pretty(&f)).unwrap(), f);
    }

    #[test]
    fn pieces() {
        let p: Piece<Rational> = parse_piece(r#"{"A": [["1","2"],["3","4"]], "c": ["0","1"]}"#).unwrap();
        assert_eq!(p.a, im(&[&[1, 2], &[3, 4]]));
        assert_eq!(p.c, iv(&[0, 1]));
    }
}
