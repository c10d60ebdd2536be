//! Triangular words on abundant acyclic quivers and the c-vector they force
//! on an unmutated source.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use quiver_core::{acyclic_order, Quiver, Vertex, VertexSet};

use crate::framed::{frame, CVector};
use crate::FramingError;

/// Vertices `1..=n+1` with two arrows `i -> j` whenever `i > j`: the sink is
/// `1`, the source `n+1`.
pub fn qn_abundant(n: u64) -> Quiver {
    assert!(n >= 1);
    let mut q = Quiver::new();
    for i in 1..=n + 1 {
        for j in i + 1..=n + 1 {
            q.set(i, j, BigInt::from(-2));
        }
    }
    q
}

/// Position of each support vertex in the acyclic order counted from the
/// greatest element: the sink gets 1, the source gets `|support|`.
pub fn triangular_index(q: &Quiver) -> Result<BTreeMap<Vertex, usize>, FramingError> {
    let support = q.support();
    let order = acyclic_order(q, &support)
        .map_err(|e| FramingError::NotAbundantAcyclic(e.to_string()))?
        .ok_or_else(|| FramingError::NotAbundantAcyclic("oriented cycle".into()))?;
    let n = order.len();
    Ok(order.into_iter().enumerate().map(|(pos, v)| (v, n - pos)).collect())
}

fn check_reduced(w: &[Vertex]) -> Result<(), FramingError> {
    match w.windows(2).find(|p| p[0] == p[1]) {
        Some(p) => Err(FramingError::UnreducedWord(p[0])),
        None => Ok(()),
    }
}

fn first_appearances(w: &[Vertex]) -> Vec<Vertex> {
    let mut seen = VertexSet::new();
    w.iter().copied().filter(|&x| seen.insert(x)).collect()
}

/// First appearances climb the order from the sink side: whenever `x` first
/// appears before `y`, `x` has the smaller index.
pub fn is_triangular(w: &[Vertex], q: &Quiver) -> Result<bool, FramingError> {
    let index = triangular_index(q)?;
    check_reduced(w)?;
    let idx: Vec<usize> = first_appearances(w)
        .iter()
        .map(|x| index.get(x).copied().ok_or(FramingError::UnknownVertex(*x)))
        .collect::<Result<_, _>>()?;
    Ok(idx.windows(2).all(|p| p[0] < p[1]))
}

/// Triangular, never uses `excluded`, and uses every other support vertex.
///
/// Comparisons only involve letters of `w`, and the acyclic order restricts to
/// full subquivers, so this is the same as strong triangularity on `q` with
/// `excluded` removed.
pub fn is_strongly_triangular(w: &[Vertex], q: &Quiver, excluded: Option<Vertex>) -> Result<bool, FramingError> {
    if !is_triangular(w, q)? {
        return Ok(false);
    }
    let used: VertexSet = w.iter().copied().collect();
    if excluded.is_some_and(|e| used.contains(&e)) {
        return Ok(false);
    }
    Ok(q.support().iter().all(|v| Some(*v) == excluded || used.contains(v)))
}

/// Every strongly triangular reduced word of length at most `max_len`.
/// Triangularity is prefix-closed, so a new letter is only ever appended when
/// its index beats every letter seen so far.
pub fn strongly_triangular_words(
    q: &Quiver,
    excluded: Option<Vertex>,
    max_len: usize,
) -> Result<Vec<Vec<Vertex>>, FramingError> {
    let index = triangular_index(q)?;
    let letters: Vec<(Vertex, usize)> = index.iter().filter(|(v, _)| Some(**v) != excluded).map(|(&v, &i)| (v, i)).collect();
    let mut out = Vec::new();
    let mut word = Vec::new();
    fn go(
        letters: &[(Vertex, usize)],
        max_len: usize,
        word: &mut Vec<Vertex>,
        top: usize,
        used: usize,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if used == letters.len() && !word.is_empty() {
            out.push(word.clone());
        }
        if word.len() == max_len {
            return;
        }
        for &(v, i) in letters {
            if word.last() == Some(&v) {
                continue;
            }
            let fresh = !word.contains(&v);
            if fresh && i <= top {
                continue;
            }
            word.push(v);
            go(letters, max_len, word, if fresh { i } else { top }, used + fresh as usize, out);
            word.pop();
        }
    }
    go(&letters, max_len, &mut word, 0, 0, &mut out);
    Ok(out)
}

/// `2 * 3^(n-i)` at `i <= n` and `1` at `n+1`.
pub fn stabilized_c_vector(n: u64) -> CVector {
    assert!(n >= 1);
    let mut c: CVector = (1..=n).map(|i| (i, BigInt::from(2) * BigInt::from(3).pow((n - i) as u32))).collect();
    c.insert(n + 1, BigInt::from(1));
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffdiagWitness {
    /// `qn_abundant(n)` relabeled so the word is triangular; `n+1` keeps its label.
    pub quiver: Quiver,
    pub n: u64,
    /// Letter -> index in the acyclic order (sink = 1).
    pub roles: BTreeMap<Vertex, u64>,
    /// The first letter of the word; its entry is the largest.
    pub vertex: Vertex,
    /// `c_{n+1, vertex}` after mutating along the word, always positive.
    pub entry: BigInt,
    pub c_vector: CVector,
}

/// For a nontrivial reduced word on `[n]` (`n` = its largest letter), a
/// quiver on `[n+1]` in which the c-vector of `n+1` has a positive entry.
///
/// Letters take indices by order of first appearance, unused letters of `[n]`
/// the remaining ones in ascending order. The word is then triangular, and
/// strongly triangular on the full subquiver of the letters it uses plus
/// `n+1`, which carries the same c-vector entries at those letters.
pub fn offdiag_witness(w: &[Vertex]) -> Result<OffdiagWitness, FramingError> {
    if w.is_empty() {
        return Err(FramingError::EmptyWord);
    }
    check_reduced(w)?;
    let n = *w.iter().max().unwrap();
    let mut by_role: Vec<Vertex> = first_appearances(w);
    let used: VertexSet = by_role.iter().copied().collect();
    by_role.extend((1..=n).filter(|v| !used.contains(v)));
    let roles: BTreeMap<Vertex, u64> = by_role.iter().enumerate().map(|(k, &v)| (v, k as u64 + 1)).collect();
    let quiver = qn_abundant(n).relabel(|role| if role == n + 1 { n + 1 } else { by_role[role as usize - 1] });
    debug_assert!(is_triangular(w, &quiver)?);
    let framed = frame(&quiver).mutate_word(w)?;
    let c_vector = framed.c_vector(n + 1)?;
    let vertex = w[0];
    let entry = c_vector[&vertex].clone();
    assert!(entry.is_positive(), "c-vector entry of {} at {vertex} is {entry}", n + 1);
    Ok(OffdiagWitness { quiver, n, roles, vertex, entry, c_vector })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framed::Color;

    fn cv(c: &[i64]) -> CVector {
        c.iter().enumerate().map(|(k, &v)| (k as Vertex + 1, BigInt::from(v))).collect()
    }

    #[test]
    fn small_tournaments() {
        assert_eq!(qn_abundant(1), Quiver::from_arrows([(2, 1, 2)]));
        assert_eq!(qn_abundant(2), Quiver::from_arrows([(2, 1, 2), (3, 1, 2), (3, 2, 2)]));
        for n in 1..=6 {
            let order = acyclic_order(&qn_abundant(n), &quiver_core::range_set(1, n + 1)).unwrap().unwrap();
            assert_eq!(order, (1..=n + 1).rev().collect::<Vec<_>>());
        }
    }

    #[test]
    fn stabilized_values() {
        assert_eq!(stabilized_c_vector(1), cv(&[2, 1]));
        assert_eq!(stabilized_c_vector(2), cv(&[6, 2, 1]));
        assert_eq!(stabilized_c_vector(3), cv(&[18, 6, 2, 1]));
    }

    #[test]
    fn sink_word_on_q2() {
        let fq = frame(&qn_abundant(2)).mutate_word(&[1, 2]).unwrap();
        assert_eq!(fq.c_vector(3).unwrap(), cv(&[6, 2, 1]));
        assert_eq!(fq.color(3), Ok(Color::Green));
    }

    #[test]
    fn triangularity_examples() {
        let q = qn_abundant(3);
        assert_eq!(is_strongly_triangular(&[1, 2, 3], &q, Some(4)), Ok(true));
        assert_eq!(is_triangular(&[3, 2, 1], &q), Ok(false));
        assert_eq!(is_triangular(&[4, 1], &q), Ok(false));
        assert_eq!(is_triangular(&[], &q), Ok(true));
        assert_eq!(is_strongly_triangular(&[], &q, Some(4)), Ok(false));
        assert_eq!(is_strongly_triangular(&[1, 2, 1, 3, 2], &q, Some(4)), Ok(true));
        assert_eq!(is_strongly_triangular(&[1, 2, 3, 4], &q, Some(4)), Ok(false));
        assert_eq!(is_triangular(&[1, 1], &q), Err(FramingError::UnreducedWord(1)));
        assert_eq!(is_triangular(&[9], &q), Err(FramingError::UnknownVertex(9)));
        let not_abundant = Quiver::from_arrows([(1, 2, 1)]);
        assert!(matches!(is_triangular(&[1], &not_abundant), Err(FramingError::NotAbundantAcyclic(_))));
        let cyclic = Quiver::from_arrows([(1, 2, 2), (2, 3, 2), (3, 1, 2)]);
        assert!(matches!(is_triangular(&[1], &cyclic), Err(FramingError::NotAbundantAcyclic(_))));
    }

    #[test]
    fn enumeration_matches_filtering() {
        // Brute force: every reduced word over [n] up to the length bound.
        for n in 1..=3u64 {
            let q = qn_abundant(n);
            let max_len = n as usize + 3;
            let mut all: Vec<Vec<Vertex>> = vec![vec![]];
            let mut brute = Vec::new();
            for _ in 0..max_len {
                all = all
                    .iter()
                    .flat_map(|w| {
                        (1..=n).filter(move |x| w.last() != Some(x)).map(move |x| {
                            let mut v = w.clone();
                            v.push(x);
                            v
                        })
                    })
                    .collect();
                for w in &all {
                    let mut seen = Vec::new();
                    for &x in w {
                        if !seen.contains(&x) {
                            seen.push(x);
                        }
                    }
                    if seen == (1..=n).collect::<Vec<_>>() {
                        brute.push(w.clone());
                    }
                }
            }
            let mut fast = strongly_triangular_words(&q, Some(n + 1), max_len).unwrap();
            fast.sort();
            brute.sort();
            assert_eq!(fast, brute);
            assert!(fast.iter().all(|w| is_strongly_triangular(w, &q, Some(n + 1)) == Ok(true)));
        }
    }

    #[test]
    fn witness_examples() {
        let w = offdiag_witness(&[1]).unwrap();
        assert_eq!(w.quiver, qn_abundant(1));
        assert_eq!((w.vertex, w.entry.clone()), (1, BigInt::from(2)));

        // 2 takes the sink role, 1 the next one.
        let w = offdiag_witness(&[2, 1]).unwrap();
        assert_eq!(w.roles, BTreeMap::from([(2, 1), (1, 2)]));
        assert_eq!(w.c_vector, cv(&[2, 6, 1]));

        let w = offdiag_witness(&[1, 2, 1]).unwrap();
        assert_eq!(w.c_vector, stabilized_c_vector(2));

        // Unused letter 1 keeps a zero entry; the used part is the n = 1 value.
        let w = offdiag_witness(&[2]).unwrap();
        assert_eq!(w.c_vector, cv(&[0, 2, 1]));

        assert_eq!(offdiag_witness(&[]).unwrap_err(), FramingError::EmptyWord);
        assert_eq!(offdiag_witness(&[3, 3]).unwrap_err(), FramingError::UnreducedWord(3));
    }
}
