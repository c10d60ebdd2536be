use std::collections::BTreeMap;

use quiver_core::{Vertex, VertexSet};

use crate::SeqError;

/// A finite mutation sequence; letters are vertex labels, repeats allowed.
pub type Word = Vec<Vertex>;

/// Collapses maximal constant blocks: even-length blocks vanish, odd-length
/// blocks become a single letter.
pub fn one_step_reduce(w: &[Vertex]) -> Word {
    let mut out = Word::new();
    let mut k = 0;
    while k < w.len() {
        let mut end = k + 1;
        while end < w.len() && w[end] == w[k] {
            end += 1;
        }
        if (end - k) % 2 == 1 {
            out.push(w[k]);
        }
        k = end;
    }
    out
}

/// Normal form under `x x = 1`: push each letter, popping instead when it
/// equals the top of the stack.
pub fn reduce_word(w: &[Vertex]) -> Word {
    let mut stack = Word::with_capacity(w.len());
    for &x in w {
        if stack.last() == Some(&x) {
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    stack
}

/// No two equal adjacent letters.
pub fn is_reduced(w: &[Vertex]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank {
    Finite(usize),
    /// No repetition was observed; only possible for infinite inputs.
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    /// `R^0(w), R^1(w), ...` up to and including the first fixed point.
    pub stages: Vec<Word>,
    pub rank: Rank,
    /// For each letter of `w`: the least `m` after which its count no longer changes.
    pub i_rank: BTreeMap<Vertex, usize>,
}

/// Iterates [`one_step_reduce`] to its fixed point. A finite word always
/// stabilizes, so `rank` is finite here.
pub fn reduction_trace(w: &[Vertex]) -> ReductionTrace {
    let mut stages = vec![w.to_vec()];
    loop {
        let next = one_step_reduce(stages.last().unwrap());
        if &next == stages.last().unwrap() {
            break;
        }
        stages.push(next);
    }
    let rank = Rank::Finite(stages.len() - 1);
    let count = |s: &Word, v: Vertex| s.iter().filter(|&&x| x == v).count();
    let mut i_rank = BTreeMap::new();
    for v in w.iter().copied().collect::<VertexSet>() {
        let last = count(stages.last().unwrap(), v);
        let m = stages.iter().rposition(|s| count(s, v) != last).map_or(0, |p| p + 1);
        i_rank.insert(v, m);
    }
    ReductionTrace { stages, rank, i_rank }
}

/// Reduced, nonempty, and deleting every occurrence of any one letter
/// reduces to the empty word.
pub fn is_irreducible(w: &[Vertex]) -> bool {
    if w.is_empty() || !is_reduced(w) {
        return false;
    }
    let letters: VertexSet = w.iter().copied().collect();
    letters.iter().all(|&j| {
        let rest: Word = w.iter().copied().filter(|&x| x != j).collect();
        reduce_word(&rest).is_empty()
    })
}

/// `(w, i, reverse(w), i)`.
pub fn extend_irreducible(w: &[Vertex], i: Vertex) -> Result<Word, SeqError> {
    if w.contains(&i) {
        return Err(SeqError::LetterCollision(i));
    }
    let mut out = w.to_vec();
    out.push(i);
    out.extend(w.iter().rev());
    out.push(i);
    debug_assert!(!is_irreducible(w) || is_irreducible(&out));
    Ok(out)
}

/// The irreducible word on `letters` obtained by extending `(order[0])` with
/// `order[1], order[2], ...`. It starts with `order[0]` and ends with the
/// last element of `order`.
pub fn irreducible_word(order: &[Vertex]) -> Word {
    let (first, rest) = order.split_first().expect("nonempty letter set");
    rest.iter().fold(vec![*first], |w, &i| extend_irreducible(&w, i).expect("distinct letters"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_step_examples() {
        assert_eq!(one_step_reduce(&[1, 1, 2, 2, 3, 3]), Word::new());
        assert_eq!(one_step_reduce(&[1, 2, 1]), vec![1, 2, 1]);
        assert_eq!(one_step_reduce(&[1, 1, 1, 2, 2, 3]), vec![1, 3]);
    }

    #[test]
    fn stack_examples() {
        assert_eq!(reduce_word(&[1, 2, 2, 1]), Word::new());
        assert_eq!(reduce_word(&[]), Word::new());
        assert_eq!(reduce_word(&[1, 1, 2, 3, 3, 2, 4, 5, 6, 6, 5, 4]), Word::new());
    }

    #[test]
    fn pair_blocks_have_rank_one() {
        let w: Word = (1..=6).flat_map(|i| [i, i]).collect();
        let t = reduction_trace(&w);
        assert_eq!(t.rank, Rank::Finite(1));
        assert!(t.i_rank.values().all(|&r| r == 1));
        assert!(t.stages.last().unwrap().is_empty());
    }

    #[test]
    fn reduced_words_have_rank_zero() {
        let t = reduction_trace(&[3, 1, 3, 2]);
        assert_eq!(t.rank, Rank::Finite(0));
        assert_eq!(t.stages.len(), 1);
    }

    #[test]
    fn worked_irreducible_words() {
        assert!(is_irreducible(&[5]));
        assert_eq!(extend_irreducible(&[5], 2).unwrap(), vec![5, 2, 5, 2]);
        assert!(is_irreducible(&[5, 2, 5, 2]));
        let j3 = irreducible_word(&[5, 2, 8]);
        assert_eq!(j3, vec![5, 2, 5, 2, 8, 2, 5, 2, 5, 8]);
        let j4 = extend_irreducible(&j3, 1).unwrap();
        assert!(is_irreducible(&j4));
        // Without the closing 1, deleting the 5s leaves a lone 1.
        let open = &j4[..j4.len() - 1];
        assert!(!is_irreducible(open));
        let no5: Word = open.iter().copied().filter(|&x| x != 5).collect();
        assert_eq!(reduce_word(&no5), vec![1]);
        assert_eq!(extend_irreducible(&[5, 2], 5), Err(SeqError::LetterCollision(5)));
        assert!(!is_irreducible(&[]));
        assert!(!is_irreducible(&[1, 2]));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(1u64..=8, 0..=40)
    }

    fn letter_counts(w: &[Vertex]) -> BTreeMap<Vertex, usize> {
        let mut m = BTreeMap::new();
        for &x in w {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    proptest! {
        #[test]
        fn stack_matches_iterated_blocks(w in arb_word()) {
            let t = reduction_trace(&w);
            prop_assert_eq!(&reduce_word(&w), t.stages.last().unwrap());
        }

        #[test]
        fn reduction_is_idempotent(w in arb_word()) {
            let r = reduce_word(&w);
            prop_assert_eq!(reduce_word(&r), r.clone());
            prop_assert!(is_reduced(&r));
            prop_assert_eq!(one_step_reduce(&w) == w, is_reduced(&w));
            prop_assert_eq!(reduction_trace(&w).rank == Rank::Finite(0), is_reduced(&w));
        }

        #[test]
        fn reduction_keeps_letters_and_parity(w in arb_word()) {
            let before = letter_counts(&w);
            let after = letter_counts(&reduce_word(&w));
            for (v, n) in &after {
                prop_assert!(before[v] >= *n);
                prop_assert_eq!(before[v] % 2, n % 2);
            }
            for (v, n) in &before {
                prop_assert_eq!(after.get(v).copied().unwrap_or(0) % 2, n % 2);
            }
        }

        #[test]
        fn rank_is_the_largest_letter_rank(w in arb_word()) {
            let t = reduction_trace(&w);
            let max = t.i_rank.values().copied().max().unwrap_or(0);
            prop_assert_eq!(t.rank, Rank::Finite(max));
        }

        #[test]
        fn extension_stays_irreducible(order in Just((1u64..=9).collect::<Vec<_>>()).prop_shuffle(), len in 1usize..=6, i in 10u64..=20) {
            let w = irreducible_word(&order[..len]);
            prop_assert!(is_irreducible(&w));
            prop_assert!(is_irreducible(&extend_irreducible(&w, i).unwrap()));
        }
    }
}
