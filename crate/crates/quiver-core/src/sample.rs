//! Random instances for property checks and demos.

use rand::Rng;

use crate::{Quiver, Vertex};

/// A quiver on `[1..n]`, `n` uniform in `1..=max_vertices`, each pair's count
/// uniform in `[-max_weight, max_weight]`.
pub fn random_quiver<R: Rng + ?Sized>(rng: &mut R, max_vertices: u64, max_weight: i64) -> Quiver {
    let n = rng.gen_range(1..=max_vertices);
    random_quiver_on(rng, n, max_weight)
}

/// A quiver on exactly the vertex range `[1..n]` (some vertices may end up isolated).
pub fn random_quiver_on<R: Rng + ?Sized>(rng: &mut R, n: u64, max_weight: i64) -> Quiver {
    let mut q = Quiver::new();
    for i in 1..=n {
        for j in i + 1..=n {
            q.set(i, j, rng.gen_range(-max_weight..=max_weight).into());
        }
    }
    q
}

/// A word of length `len` over `[1..alphabet]`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize, alphabet: Vertex) -> Vec<Vertex> {
    (0..len).map(|_| rng.gen_range(1..=alphabet)).collect()
}

/// A word with no two equal adjacent letters. On fewer than two letters such
/// words have length at most `alphabet`, so `len` is capped there.
pub fn random_reduced_word<R: Rng + ?Sized>(rng: &mut R, len: usize, alphabet: Vertex) -> Vec<Vertex> {
    let len = if alphabet < 2 { len.min(alphabet as usize) } else { len };
    let mut w: Vec<Vertex> = Vec::with_capacity(len);
    while w.len() < len {
        let x = rng.gen_range(1..=alphabet);
        if w.last() != Some(&x) {
            w.push(x);
        }
    }
    w
}
