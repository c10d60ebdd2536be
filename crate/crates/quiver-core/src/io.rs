//! Canonical JSON `{"arrows":[[i,j,m],...]}` (pairs `i < j`, sorted, `m != 0`)
//! and Graphviz DOT output.

use std::fmt::Write;

use serde_json::Value;
use thiserror::Error;

use crate::{QuiverOf, Vertex, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("MalformedQuiver: {0}")]
    Malformed(String),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Malformed(msg.into())
}

/// Canonical compact serialization; equal quivers give identical strings.
pub fn to_json<W: Weight>(q: &QuiverOf<W>) -> String {
    let mut s = String::from("{\"arrows\":[");
    for (k, (i, j, m)) in q.arrows().enumerate() {
        if k > 0 {
            s.push(',');
        }
        write!(s, "[{i},{j},{m}]").unwrap();
    }
    s.push_str("]}");
    s
}

pub fn from_json<W: Weight>(text: &str) -> Result<QuiverOf<W>, IoError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    from_value(&v)
}

/// Reads the `arrows` field of a JSON object. Triples may come in either
/// orientation; a pair listed twice must agree.
pub fn from_value<W: Weight>(v: &Value) -> Result<QuiverOf<W>, IoError> {
    let arrows = v
        .get("arrows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("expected an object with an \"arrows\" array"))?;
    let mut q = QuiverOf::<W>::new();
    for t in arrows {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("arrow entries are [i, j, m]"))?;
        let i = vertex_of(&t[0])?;
        let j = vertex_of(&t[1])?;
        if i == j {
            return Err(bad(format!("loop at vertex {i}")));
        }
        let m: W = weight_of(&t[2])?;
        let cur = q.get(i, j);
        if !cur.is_zero() && cur != m {
            return Err(bad(format!("pair ({i},{j}) listed with two counts")));
        }
        q.set(i, j, m);
    }
    Ok(q)
}

pub fn vertex_of(v: &Value) -> Result<Vertex, IoError> {
    match v.as_u64() {
        Some(x) if x > 0 => Ok(x),
        _ => Err(bad(format!("vertex must be a positive integer, got {v}"))),
    }
}

pub fn weight_of<W: Weight>(v: &Value) -> Result<W, IoError> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| bad(format!("bad arrow count {n}"))),
        _ => Err(bad(format!("arrow count must be an integer, got {v}"))),
    }
}

/// One node per support vertex and one edge `i -> j` labeled with the count.
pub fn to_dot<W: Weight>(q: &QuiverOf<W>) -> String {
    let mut s = String::from("digraph quiver {\n");
    for v in q.support() {
        writeln!(s, "  {v};").unwrap();
    }
    for (i, j, m) in q.arrows() {
        let (a, b) = if m.is_positive() { (i, j) } else { (j, i) };
        writeln!(s, "  {a} -> {b} [label=\"{}\"];", m.abs()).unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Quiver;
    use num_bigint::BigInt;

    #[test]
    fn canonical_form() {
        let q = Quiver::from_arrows([(3, 1, 2), (1, 2, 1)]);
        assert_eq!(to_json(&q), r#"{"arrows":[[1,2,1],[1,3,-2]]}"#);
        let back: Quiver = from_json(r#"{"arrows": [[3, 1, 2], [1, 2, 1]]}"#).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn big_counts_survive() {
        let m: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q = Quiver::from_arrows([(1, 2, m)]);
        let text = to_json(&q);
        assert_eq!(from_json::<BigInt>(&text).unwrap(), q);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_json::<BigInt>(r#"{"arrows":[[1,1,1]]}"#).is_err());
        assert!(from_json::<BigInt>(r#"{"arrows":[[0,1,1]]}"#).is_err());
        assert!(from_json::<BigInt>(r#"{"arrows":[[1,2,1],[2,1,1]]}"#).is_err());
        assert!(from_json::<BigInt>(r#"{"arrows":[[1,2]]}"#).is_err());
        assert!(from_json::<BigInt>(r#"[1,2]"#).is_err());
    }

    #[test]
    fn dot_orients_edges() {
        let q = Quiver::from_arrows([(1, 2, -3)]);
        assert_eq!(to_dot(&q), "digraph quiver {\n  1;\n  2;\n  2 -> 1 [label=\"3\"];\n}\n");
    }
}
