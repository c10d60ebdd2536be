use std::collections::BTreeMap;

use quiver_core::Vertex;

use crate::descriptor::{Descriptor, Occurrence};
use crate::word::Word;
use crate::SeqError;

/// Result of running stack cancellation over a bounded prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamReduction {
    /// Bottom of the stack that no future letter can ever cancel: a prefix of
    /// the reduction of the whole sequence.
    pub frozen: Word,
    pub certified_length: usize,
    /// The rest of the stack, above the frozen part.
    pub live_suffix: Word,
    /// No letters remain after the inspected prefix.
    pub exhausted: bool,
    /// Ticks consumed.
    pub consumed: usize,
}

/// Remaining-occurrence bookkeeping against a descriptor's totals.
pub(crate) struct Remaining<'a> {
    d: &'a Descriptor,
    left: BTreeMap<Vertex, u64>,
}

impl<'a> Remaining<'a> {
    pub(crate) fn new(d: &'a Descriptor) -> Self {
        Remaining { d, left: BTreeMap::new() }
    }

    fn entry(&mut self, v: Vertex) -> &mut u64 {
        let d = self.d;
        self.left.entry(v).or_insert_with(|| match d.total(v) {
            Occurrence::Finite(n) => n,
            Occurrence::Infinite => unreachable!("checked before streaming"),
        })
    }

    pub(crate) fn consume(&mut self, v: Vertex) {
        let e = self.entry(v);
        *e = e.checked_sub(1).expect("occurrence oracle undercounts");
    }

    pub(crate) fn get(&mut self, v: Vertex) -> u64 {
        *self.entry(v)
    }
}

/// Stack cancellation over the first `horizon` ticks of `d`.
///
/// A stack position is frozen once its letter has no remaining occurrences:
/// it can then never be popped, and neither can anything beneath it.
pub fn stream_reduce(d: &Descriptor, horizon: usize) -> Result<StreamReduction, SeqError> {
    if let Some(&v) = d.infinite_letters().iter().next() {
        return Err(SeqError::InfiniteOccurrence(v));
    }
    let alphabet = d.alphabet();
    let mut rem = Remaining::new(d);
    let mut live_letters = alphabet.as_ref().map(|a| a.iter().filter(|&&v| rem.get(v) > 0).count());
    let mut stack = Word::new();
    let mut ticks = d.ticks();
    let mut consumed = 0;
    let mut ended = false;
    while consumed < horizon && live_letters != Some(0) {
        let Some(t) = ticks.next() else {
            ended = true;
            break;
        };
        consumed += 1;
        let Some(v) = t else { continue };
        rem.consume(v);
        if rem.get(v) == 0 {
            if let Some(n) = live_letters.as_mut() {
                *n -= 1;
            }
        }
        if stack.last() == Some(&v) {
            stack.pop();
        } else {
            stack.push(v);
        }
    }
    let exhausted = ended || live_letters == Some(0) || (consumed == horizon && ticks.next().is_none());
    let frozen_len = stack.iter().rposition(|&v| rem.get(v) == 0).map_or(0, |p| p + 1);
    let live_suffix = stack.split_off(frozen_len);
    Ok(StreamReduction { certified_length: stack.len(), frozen: stack, live_suffix, exhausted, consumed })
}
