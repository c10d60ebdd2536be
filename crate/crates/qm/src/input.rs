//! Parsing of command-line values: quivers, descriptors, words and windows
//! given inline, by name, or as a path to a JSON file.

use std::path::Path;

use convergence::a_infinity;
use framing::qn_abundant;
use num_bigint::BigInt;
use quiver_core::{Quiver, Vertex, VertexSet};
use seqcomb::{Descriptor, FamilySpec, Generator};
use serde_json::Value;

use crate::Failure;

fn json_text(arg: &str) -> Result<Option<String>, Failure> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(t.to_string()));
    }
    if Path::new(t).is_file() {
        return std::fs::read_to_string(t).map(Some).map_err(|e| Failure::Usage(format!("cannot read {t}: {e}")));
    }
    Ok(None)
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Domain(format!("MalformedJson: {e}")))
}

/// `name(k)` -> `("name", Some(k))`, `name` -> `("name", None)`.
fn call(arg: &str) -> Result<(&str, Option<&str>), Failure> {
    match arg.split_once('(') {
        Some((name, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| Failure::Usage(format!("unbalanced parenthesis in {arg}")))?;
            Ok((name, Some(inner)))
        }
        None => Ok((arg, None)),
    }
}

fn positive(s: Option<&str>, what: &str) -> Result<Vertex, Failure> {
    s.and_then(|x| x.trim().parse::<Vertex>().ok())
        .filter(|&x| x > 0)
        .ok_or_else(|| Failure::Usage(format!("{what} needs a positive integer argument")))
}

/// A JSON quiver (inline or file), or one of `empty`, `markov`, `a3`,
/// `cycle3`, `a_inf(N)`, `qn(n)`.
pub fn quiver(arg: &str) -> Result<Quiver, Failure> {
    if let Some(text) = json_text(arg)? {
        return quiver_core::from_json(&text).map_err(|e| Failure::Domain(e.to_string()));
    }
    let (name, p) = call(arg.trim())?;
    Ok(match name {
        "empty" => Quiver::new(),
        "markov" => Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)]),
        "a3" => Quiver::from_arrows([(1, 2, 1), (2, 3, 1)]),
        "cycle3" => Quiver::from_arrows([(1, 2, 1), (2, 3, 1), (3, 1, 1)]),
        "a_inf" => a_infinity(positive(p, "a_inf")?),
        "qn" => qn_abundant(positive(p, "qn")?),
        _ => return Err(Failure::Usage(format!("not a quiver file, JSON or known name: {arg}"))),
    })
}

/// A JSON descriptor (inline or file), or `identity_ray`, `shifted_ray(k)`,
/// `pair_blocks`, `triangular_palindromes`, `repeat(i)`, `prefix(1,2,...)`,
/// `blocks(s)`.
pub fn descriptor(arg: &str) -> Result<Descriptor, Failure> {
    if let Some(text) = json_text(arg)? {
        return Descriptor::from_json(&parse_json(&text)?).map_err(|e| Failure::Domain(e.to_string()));
    }
    let (name, p) = call(arg.trim())?;
    let g = match name {
        "identity_ray" => Generator::IdentityRay,
        "shifted_ray" => Generator::ShiftedRay(positive(p, "shifted_ray")?),
        "pair_blocks" => Generator::PairBlocks,
        "triangular_palindromes" => Generator::TriangularPalindromes,
        "repeat" => Generator::Repeat(positive(p, "repeat")?),
        "blocks" => Generator::FamilyConcat(FamilySpec::Blocks { size: positive(p, "blocks")? }),
        "prefix" => return Ok(Descriptor::prefix(word(p.unwrap_or(""))?)),
        _ => return Err(Failure::Usage(format!("not a descriptor file, JSON or known generator: {arg}"))),
    };
    Ok(Descriptor::generator(g))
}

pub fn family(arg: &str) -> Result<FamilySpec, Failure> {
    let text = json_text(arg)?.ok_or_else(|| Failure::Usage(format!("family must be JSON or a JSON file: {arg}")))?;
    FamilySpec::from_json(&parse_json(&text)?).map_err(|e| Failure::Domain(e.to_string()))
}

/// Comma-separated positive integers; empty means the empty word.
pub fn word(arg: &str) -> Result<Vec<Vertex>, Failure> {
    let t = arg.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<Vertex>().ok().filter(|&v| v > 0).ok_or_else(|| Failure::Usage(format!("not a vertex: {x}"))))
        .collect()
}

/// `a..b` (inclusive) or a comma list.
pub fn window(arg: &str) -> Result<VertexSet, Failure> {
    if let Some((a, b)) = arg.split_once("..") {
        let lo = positive(Some(a), "window")?;
        let hi = positive(Some(b), "window")?;
        return Ok((lo..=hi).collect());
    }
    Ok(word(arg)?.into_iter().collect())
}

pub fn integers(arg: &str) -> Result<Vec<BigInt>, Failure> {
    arg.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<BigInt>().map_err(|_| Failure::Usage(format!("not an integer: {x}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthands() {
        assert_eq!(quiver("a_inf(3)").unwrap(), Quiver::from_arrows([(1, 2, 1), (2, 3, 1)]));
        assert_eq!(quiver(r#"{"arrows":[[1,2,-2]]}"#).unwrap(), Quiver::from_arrows([(2, 1, 2)]));
        assert!(matches!(quiver("qn(0)"), Err(Failure::Usage(_))));
        assert_eq!(descriptor("shifted_ray(3)").unwrap().take(3), [3, 4, 5]);
        assert_eq!(descriptor("prefix(2,1)").unwrap().take(5), [2, 1]);
        assert!(matches!(descriptor("prefix(2"), Err(Failure::Usage(_))));
    }

    #[test]
    fn words_and_windows() {
        assert_eq!(word("").unwrap(), Vec::<Vertex>::new());
        assert_eq!(word("[1, 2,3]").unwrap(), [1, 2, 3]);
        assert!(word("0").is_err());
        assert_eq!(window("2..4").unwrap(), [2, 3, 4].into());
        assert_eq!(window("5,1").unwrap(), [1, 5].into());
        assert_eq!(integers("12,-3").unwrap(), [BigInt::from(12), BigInt::from(-3)]);
    }
}
