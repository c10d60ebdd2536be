use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use quiver_core::io::{vertex_of, weight_of};
use quiver_core::{Quiver, Vertex, VertexSet};
use serde_json::Value;

use crate::FramingError;

/// `c_{x,y}` for every mutable `y`, zeros included.
pub type CVector = BTreeMap<Vertex, BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FramedVertex {
    Mutable(Vertex),
    /// The frozen companion `x'` of mutable `x`.
    Frozen(Vertex),
}

impl FramedVertex {
    /// `x > 0` is mutable `x`, `-x` is its frozen companion.
    pub fn from_signed(v: i64) -> Option<Self> {
        match v {
            0 => None,
            v if v > 0 => Some(FramedVertex::Mutable(v as Vertex)),
            v => Some(FramedVertex::Frozen(v.unsigned_abs())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Green,
    Red,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::Green => "green",
            Color::Red => "red",
        }
    }
}

/// A quiver on mutable vertices plus frozen companions.
///
/// Frozen-to-frozen arrows never exist, so the whole quiver is the mutable
/// part together with the c-matrix `c[x][y] = #arrows x -> y'` (signed).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FramedQuiver {
    base: Quiver,
    mutable: VertexSet,
    /// Sparse rows; absent entries are zero.
    c: BTreeMap<Vertex, BTreeMap<Vertex, BigInt>>,
}

impl std::fmt::Debug for FramedQuiver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_json())
    }
}

/// Framing on the support of `q`.
pub fn frame(q: &Quiver) -> FramedQuiver {
    frame_on(q, &q.support())
}

/// Framing with an explicit mutable set, which must contain the support.
pub fn frame_on(q: &Quiver, mutable: &VertexSet) -> FramedQuiver {
    assert!(q.support().is_subset(mutable), "mutable set must contain the support");
    let c = mutable.iter().map(|&x| (x, BTreeMap::from([(x, BigInt::from(1))]))).collect();
    FramedQuiver { base: q.clone(), mutable: mutable.clone(), c }
}

/// `a [b]_+ + [-a]_+ b`: the path-composition term of mutation.
fn through(a: &BigInt, b: &BigInt) -> BigInt {
    let pos = |t: &BigInt| if t.is_positive() { t.clone() } else { BigInt::zero() };
    a * pos(b) + pos(&-a) * b
}

impl FramedQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn mutable_set(&self) -> &VertexSet {
        &self.mutable
    }

    /// `c_{x,y}`, the signed number of arrows `x -> y'`.
    pub fn c_entry(&self, x: Vertex, y: Vertex) -> BigInt {
        self.c.get(&x).and_then(|row| row.get(&y)).cloned().unwrap_or_default()
    }

    pub fn mutate_framed(&self, v: FramedVertex) -> Result<FramedQuiver, FramingError> {
        match v {
            FramedVertex::Frozen(x) => Err(FramingError::FrozenMutation(x)),
            FramedVertex::Mutable(k) => self.mutate(k),
        }
    }

    /// Mutation at a mutable vertex. A c-vector of mixed sign at `k` would
    /// create arrows between frozen vertices, which is reported as
    /// `SignIncoherence(k)`.
    pub fn mutate(&self, k: Vertex) -> Result<FramedQuiver, FramingError> {
        if !self.mutable.contains(&k) {
            return Err(FramingError::UnknownVertex(k));
        }
        let ck = self.c[&k].clone();
        if ck.values().any(Signed::is_positive) && ck.values().any(Signed::is_negative) {
            return Err(FramingError::SignIncoherence(k));
        }
        let mut c = self.c.clone();
        for (x, qkx) in self.base.neighbors(k) {
            let qxk = -qkx;
            let row = c.get_mut(&x).expect("neighbors of a mutable vertex are mutable");
            for (y, cky) in &ck {
                let e = row.entry(*y).or_default();
                *e += through(&qxk, cky);
                if e.is_zero() {
                    row.remove(y);
                }
            }
        }
        for e in c.get_mut(&k).unwrap().values_mut() {
            *e = -e.clone();
        }
        Ok(FramedQuiver { base: self.base.mutate(k), mutable: self.mutable.clone(), c })
    }

    pub fn mutate_word(&self, word: &[Vertex]) -> Result<FramedQuiver, FramingError> {
        word.iter().try_fold(self.clone(), |fq, &k| fq.mutate(k))
    }

    pub fn c_vector(&self, x: Vertex) -> Result<CVector, FramingError> {
        if !self.mutable.contains(&x) {
            return Err(FramingError::UnknownVertex(x));
        }
        Ok(self.mutable.iter().map(|&y| (y, self.c_entry(x, y))).collect())
    }

    /// Green iff the c-vector is nonnegative, red iff nonpositive. A c-vector
    /// is never zero, so anything else is `SignIncoherence`.
    pub fn color(&self, x: Vertex) -> Result<Color, FramingError> {
        let row = self.c.get(&x).ok_or(FramingError::UnknownVertex(x))?;
        let pos = row.values().any(Signed::is_positive);
        let neg = row.values().any(Signed::is_negative);
        match (pos, neg) {
            (true, false) => Ok(Color::Green),
            (false, true) => Ok(Color::Red),
            _ => Err(FramingError::SignIncoherence(x)),
        }
    }

    /// The whole framed quiver as a plain quiver, frozen `y'` placed at `y + offset`.
    pub fn to_quiver_with_offset(&self, offset: Vertex) -> Quiver {
        assert!(self.mutable.iter().all(|&x| x < offset), "offset must exceed every mutable vertex");
        let mut q = self.base.clone();
        for (&x, row) in &self.c {
            for (&y, m) in row {
                q.set(x, y + offset, m.clone());
            }
        }
        q
    }

    /// `{"mutable":[...],"arrows":[...]}`: the mutable arrows in canonical
    /// quiver form, then `[x,-y,c]` for each nonzero c-matrix entry.
    pub fn to_json(&self) -> String {
        let mut s = String::from("{\"mutable\":[");
        for (k, x) in self.mutable.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            write!(s, "{x}").unwrap();
        }
        s.push_str("],\"arrows\":[");
        let mut first = true;
        let mut item = |s: &mut String, i: i128, j: i128, m: &BigInt| {
            if !first {
                s.push(',');
            }
            first = false;
            write!(s, "[{i},{j},{m}]").unwrap();
        };
        for (i, j, m) in self.base.arrows() {
            item(&mut s, i as i128, j as i128, m);
        }
        for (&x, row) in &self.c {
            for (&y, m) in row {
                item(&mut s, x as i128, -(y as i128), m);
            }
        }
        s.push_str("]}");
        s
    }

    pub fn from_json(text: &str) -> Result<FramedQuiver, FramingError> {
        let v: Value = serde_json::from_str(text).map_err(|e| FramingError::Malformed(e.to_string()))?;
        Self::from_value(&v)
    }

    /// Arrow triples may use either orientation; negative ids are frozen.
    pub fn from_value(v: &Value) -> Result<FramedQuiver, FramingError> {
        let bad = |m: String| FramingError::Malformed(m);
        let io = |e: quiver_core::IoError| bad(e.to_string());
        let mutable: VertexSet = v
            .get("mutable")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("expected a \"mutable\" array".into()))?
            .iter()
            .map(vertex_of)
            .collect::<Result<_, _>>()
            .map_err(io)?;
        let arrows = v
            .get("arrows")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("expected an \"arrows\" array".into()))?;
        let mut fq = FramedQuiver { base: Quiver::new(), mutable: mutable.clone(), c: BTreeMap::new() };
        for &x in &mutable {
            fq.c.insert(x, BTreeMap::new());
        }
        for t in arrows {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("arrow entries are [i, j, m]".into()))?;
            let end = |e: &Value| {
                e.as_i64().and_then(FramedVertex::from_signed).ok_or_else(|| bad(format!("bad vertex id {e}")))
            };
            let m: BigInt = weight_of(&t[2]).map_err(io)?;
            let (x, y, m) = match (end(&t[0])?, end(&t[1])?) {
                (FramedVertex::Mutable(i), FramedVertex::Mutable(j)) => {
                    if i == j {
                        return Err(bad(format!("loop at vertex {i}")));
                    }
                    for e in [i, j] {
                        if !mutable.contains(&e) {
                            return Err(bad(format!("vertex {e} is not listed as mutable")));
                        }
                    }
                    fq.base.set(i, j, m);
                    continue;
                }
                (FramedVertex::Mutable(x), FramedVertex::Frozen(y)) => (x, y, m),
                (FramedVertex::Frozen(y), FramedVertex::Mutable(x)) => (x, y, -m),
                (FramedVertex::Frozen(a), FramedVertex::Frozen(b)) => {
                    return Err(bad(format!("arrow between frozen vertices -{a} and -{b}")))
                }
            };
            if !mutable.contains(&x) || !mutable.contains(&y) {
                return Err(bad(format!("entry ({x},-{y}) outside the mutable set")));
            }
            if !m.is_zero() {
                fq.c.get_mut(&x).unwrap().insert(y, m);
            }
        }
        Ok(fq)
    }
}
