use std::collections::BTreeMap;

use quiver_core::{is_isomorphic, Quiver, Vertex, VertexSet};

use crate::generic::{GenericQuiver, Slot};

/// A finite bijection `A -> B` carrying the committed quiver on `A` onto its
/// mutation at the base vertex on `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIso {
    pub stage: usize,
    pub pairs: BTreeMap<Vertex, Vertex>,
}

impl PartialIso {
    pub fn domain(&self) -> VertexSet {
        self.pairs.keys().copied().collect()
    }

    pub fn image(&self) -> VertexSet {
        self.pairs.values().copied().collect()
    }

    /// Exact check against `k`: same counts on every pair after renaming.
    pub fn holds_on(&self, k: &Quiver, at: Vertex) -> bool {
        let source = k.restrict(&self.domain()).relabel(|x| self.pairs[&x]);
        source == k.restrict(&self.image()).mutate(at)
    }
}

fn least_outside(s: &VertexSet) -> Vertex {
    (1..).find(|v| !s.contains(v)).expect("finite set")
}

/// Stages `1..=n` of the back-and-forth between the committed quiver `K` and
/// its mutation at `at`. Stage 1 is `at -> at`. Even stages add the least
/// vertex missing from the image, odd ones the least missing from the domain;
/// the partner vertex is realized fresh with exactly the counts the
/// isomorphism demands.
pub fn back_and_forth(g: &mut GenericQuiver, at: Vertex, n: usize) -> Vec<PartialIso> {
    assert!(n >= 1);
    g.force(at);
    let mut f: BTreeMap<Vertex, Vertex> = [(at, at)].into();
    let mut out = vec![PartialIso { stage: 1, pairs: f.clone() }];
    for stage in 2..=n {
        let domain: VertexSet = f.keys().copied().collect();
        let image: VertexSet = f.values().copied().collect();
        if stage % 2 == 0 {
            let b = least_outside(&image);
            g.force(b);
            let mut grown = image.clone();
            grown.insert(b);
            let target = g.current().restrict(&grown).mutate(at);
            let to_base = domain.iter().map(|&x| (x, target.get(b, f[&x]))).collect();
            let a = g.realize_extension(&domain, &[Slot { to_base, ..Slot::default() }]).expect("well-formed slot")[0];
            f.insert(a, b);
        } else {
            let a = least_outside(&domain);
            g.force(a);
            let b = g.next_fresh();
            let mut grown = domain.clone();
            grown.insert(a);
            // The mutated side must look like K on A + a; undo the mutation
            // to get the counts in K itself.
            let wanted = g.current().restrict(&grown).relabel(|x| if x == a { b } else { f[&x] });
            let in_k = wanted.mutate(at);
            let to_base = image.iter().map(|&y| (y, in_k.get(b, y))).collect();
            let fresh = g.realize_extension(&image, &[Slot { to_base, ..Slot::default() }]).expect("well-formed slot");
            assert_eq!(fresh, vec![b]);
            f.insert(a, b);
        }
        out.push(PartialIso { stage, pairs: f.clone() });
    }
    let k = g.current();
    for p in &out {
        assert!(p.holds_on(k, at), "stage {} is not an isomorphism", p.stage);
        let (src, dst) = (k.restrict(&p.domain()), k.restrict(&p.image()).mutate(at));
        assert!(is_isomorphic(&src, &dst).is_some());
    }
    out
}
