use std::collections::BTreeMap;

use crate::{QuiverOf, Vertex, Weight};

/// A bijection `f` between supports with `b(f(x), f(y)) = a(x, y)`, if one
/// exists. Isolated vertices play no role.
///
/// Candidates are pruned by sorted neighbor-count profiles, then matched by
/// backtracking in order of fewest candidates.
pub fn is_isomorphic<W: Weight>(a: &QuiverOf<W>, b: &QuiverOf<W>) -> Option<BTreeMap<Vertex, Vertex>> {
    if a.arrow_pairs() != b.arrow_pairs() {
        return None;
    }
    let (sa, sb) = (a.support(), b.support());
    if sa.len() != sb.len() {
        return None;
    }
    let profile = |q: &QuiverOf<W>, v: Vertex| {
        let mut p: Vec<W> = q.neighbors(v).into_iter().map(|(_, m)| m).collect();
        p.sort();
        p
    };
    let pb: Vec<(Vertex, Vec<W>)> = sb.iter().map(|&v| (v, profile(b, v))).collect();
    let mut order: Vec<(Vertex, Vec<Vertex>)> = sa
        .iter()
        .map(|&v| {
            let p = profile(a, v);
            (v, pb.iter().filter(|(_, q)| *q == p).map(|(w, _)| *w).collect())
        })
        .collect();
    if order.iter().any(|(_, c)| c.is_empty()) {
        return None;
    }
    order.sort_by_key(|(v, c)| (c.len(), *v));

    let mut map: Vec<(Vertex, Vertex)> = Vec::with_capacity(order.len());
    let mut used = std::collections::BTreeSet::new();
    if extend(a, b, &order, &mut map, &mut used) {
        Some(map.into_iter().collect())
    } else {
        None
    }
}

fn extend<W: Weight>(
    a: &QuiverOf<W>,
    b: &QuiverOf<W>,
    order: &[(Vertex, Vec<Vertex>)],
    map: &mut Vec<(Vertex, Vertex)>,
    used: &mut std::collections::BTreeSet<Vertex>,
) -> bool {
    let Some((x, cands)) = order.get(map.len()) else {
        return true;
    };
    for &y in cands {
        if used.contains(&y) {
            continue;
        }
        if map.iter().all(|&(u, fu)| a.get(*x, u) == b.get(y, fu)) {
            map.push((*x, y));
            used.insert(y);
            if extend(a, b, order, map, used) {
                return true;
            }
            map.pop();
            used.remove(&y);
        }
    }
    false
}
