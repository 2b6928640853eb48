//! k-subsets of the integers up to uniform shifts by multiples of `n`, their
//! packets, and k-inversions of (affine) permutations.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{AffinePermutation, InversionPair};

/// Canonical representative of a class of k-subsets with pairwise distinct
/// residues. For `k >= 2` the smallest entry lies in `1..=n`; singletons are
/// never shifted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass {
    n: usize,
    elems: Vec<i64>,
}

impl KClass {
    pub fn canonicalize(raw: &[i64], n: usize) -> Result<Self> {
        if raw.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::NotIncreasing(raw.to_vec()));
        }
        let mut seen = vec![None; n];
        for &x in raw {
            let r = x.rem_euclid(n as i64) as usize;
            if let Some(prev) = seen[r] {
                return Err(Error::ClassResidue {
                    n,
                    a: prev,
                    b: x,
                    entries: raw.to_vec(),
                });
            }
            seen[r] = Some(x);
        }
        Ok(Self::from_sorted(n, raw.to_vec()))
    }

    /// Skips validation; `elems` must be increasing with distinct residues.
    pub(crate) fn from_sorted(n: usize, mut elems: Vec<i64>) -> Self {
        if elems.len() >= 2 {
            let ni = n as i64;
            let shift = (elems[0] - 1).div_euclid(ni) * ni;
            if shift != 0 {
                for x in &mut elems {
                    *x -= shift;
                }
            }
        }
        KClass { n, elems }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[i64] {
        &self.elems
    }

    /// `X_i`: the class obtained by deleting the `i`-th entry (1-based).
    pub fn omit(&self, i: usize) -> KClass {
        assert!((1..=self.k()).contains(&i), "omit index {i} out of range");
        let mut e = self.elems.clone();
        e.remove(i - 1);
        Self::from_sorted(self.n, e)
    }

    /// Adds `delta[j]` to the `j`-th entry; the result must stay increasing.
    pub fn shifted(&self, delta: &[i64]) -> Option<KClass> {
        let e: Vec<i64> = self.elems.iter().zip(delta).map(|(x, d)| x + d).collect();
        if e.windows(2).any(|p| p[0] >= p[1]) {
            return None;
        }
        Some(Self::from_sorted(self.n, e))
    }

    pub fn packet(&self) -> Packet {
        assert!(self.k() >= 2, "packets need at least two entries");
        Packet {
            parent: self.clone(),
            members: (1..=self.k()).map(|i| self.omit(i)).collect(),
        }
    }

    /// Residues of the entries, in entry order.
    pub fn residues(&self) -> Vec<usize> {
        self.elems
            .iter()
            .map(|x| x.rem_euclid(self.n as i64) as usize)
            .collect()
    }

    /// Whether both classes are members of the packet of one common
    /// `(k+1)`-class. Both must have the same size `k`.
    pub fn shares_packet(&self, other: &KClass) -> bool {
        let k = self.k();
        if other.k() != k || self == other || k == 0 {
            return false;
        }
        let ni = self.n as i64;
        // For every shared residue the two entries must differ by one common
        // multiple of n; exactly k-1 residues may be shared.
        let mut shared = 0;
        let mut offset = None;
        for &x in &self.elems {
            let rx = x.rem_euclid(ni);
            if let Some(&y) = other.elems.iter().find(|y| y.rem_euclid(ni) == rx) {
                shared += 1;
                let d = x - y;
                match offset {
                    None => offset = Some(d),
                    Some(o) if o != d => return false,
                    _ => {}
                }
            }
        }
        shared + 1 == k
    }
}

impl KClass {
    pub fn from_pair(n: usize, p: InversionPair) -> Self {
        Self::from_sorted(n, vec![p.x, p.y])
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for KClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

/// Parses `"[1,2,4,6]"`, or the compact `"1246"` when every entry is a
/// single digit.
pub fn parse_class(s: &str, n: usize) -> Result<KClass> {
    let err = |reason: &str| Error::Parse {
        what: "class",
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let bracketed = t.starts_with('[');
    let inner = t
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(t);
    let elems = if bracketed || inner.contains(',') {
        inner
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<i64>().map_err(|e| err(&e.to_string())))
            .collect::<Result<Vec<_>>>()?
    } else {
        inner
            .chars()
            .map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| err("expected digits")))
            .collect::<Result<Vec<_>>>()?
    };
    KClass::canonicalize(&elems, n)
}

/// `P(X) = {X_1, ..., X_k}` with `X_i` omitting the `i`-th entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packet {
    pub parent: KClass,
    /// `X_1, ..., X_k`, which is also the antilex order.
    pub members: Vec<KClass>,
}

impl Packet {
    pub fn lex(&self) -> Vec<KClass> {
        self.members.iter().rev().cloned().collect()
    }

    pub fn antilex(&self) -> Vec<KClass> {
        self.members.clone()
    }

    fn mask(&self, set: &BTreeSet<KClass>) -> Option<Vec<bool>> {
        if set.iter().any(|s| !self.members.contains(s)) {
            return None;
        }
        Some(self.members.iter().map(|m| set.contains(m)).collect())
    }

    /// `{X_k, X_{k-1}, ..., X_i}`; the empty set and the whole packet count.
    pub fn is_prefix(&self, set: &BTreeSet<KClass>) -> bool {
        self.mask(set).is_some_and(|m| is_prefix_mask(&m))
    }

    /// `{X_i, ..., X_1}`; the empty set and the whole packet count.
    pub fn is_suffix(&self, set: &BTreeSet<KClass>) -> bool {
        self.mask(set).is_some_and(|m| is_suffix_mask(&m))
    }
}

/// Mask indexed by `X_1..X_k`: a prefix is a run of trailing members.
pub(crate) fn is_prefix_mask(mask: &[bool]) -> bool {
    let first = mask.iter().position(|&b| b).unwrap_or(mask.len());
    mask[first..].iter().all(|&b| b)
}

pub(crate) fn is_suffix_mask(mask: &[bool]) -> bool {
    let end = mask.iter().position(|&b| !b).unwrap_or(mask.len());
    mask[end..].iter().all(|&b| !b)
}

/// Shape of `P(X) ∩ Inv_k(w)` for a `(k+1)`-class `X`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PacketShape {
    Empty,
    Singleton(usize),
    AdjacentPair(usize),
    Full,
}

/// Per-permutation lookup tables for k-inversion enumeration.
pub struct InversionTable {
    w: AffinePermutation,
    /// `up[r]`: offsets `d > 0` with `[x, x+d]` a 2-inversion for `x ≡ r`.
    up: Vec<Vec<i64>>,
    /// `down[r]`: offsets `d > 0` with `[x-d, x]` a 2-inversion for `x ≡ r`.
    down: Vec<Vec<i64>>,
}

impl InversionTable {
    pub fn new(w: &AffinePermutation) -> Self {
        let n = w.n();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for p in w.inv2() {
            let d = p.y - p.x;
            up[p.x.rem_euclid(n as i64) as usize].push(d);
            down[p.y.rem_euclid(n as i64) as usize].push(d);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        InversionTable {
            w: w.clone(),
            up,
            down,
        }
    }

    pub fn permutation(&self) -> &AffinePermutation {
        &self.w
    }

    fn res(&self, x: i64) -> usize {
        x.rem_euclid(self.w.n() as i64) as usize
    }

    /// `Inv_k(w)` in lexicographic order of canonical representatives.
    pub fn inv_k(&self, k: usize) -> Result<Vec<KClass>> {
        let n = self.w.n();
        match k {
            0 => return Ok(vec![KClass { n, elems: vec![] }]),
            1 if self.w.is_finite() => {
                return Ok((1..=n as i64).map(|x| KClass { n, elems: vec![x] }).collect())
            }
            1 => {
                return Err(Error::Unsupported(format!(
                    "Inv_1 of the affine permutation {} is infinite",
                    self.w
                )))
            }
            _ => {}
        }
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(k);
        let mut used = vec![false; n];
        for x in 1..=n as i64 {
            chain.push(x);
            used[self.res(x)] = true;
            self.extend_chain(k, &mut chain, &mut used, &mut out);
            used[self.res(x)] = false;
            chain.pop();
        }
        out.sort();
        Ok(out)
    }

    fn extend_chain(&self, k: usize, chain: &mut Vec<i64>, used: &mut [bool], out: &mut Vec<KClass>) {
        if chain.len() == k {
            out.push(KClass {
                n: self.w.n(),
                elems: chain.clone(),
            });
            return;
        }
        let last = *chain.last().unwrap();
        for &d in &self.up[self.res(last)] {
            let y = last + d;
            let r = self.res(y);
            if used[r] {
                continue;
            }
            used[r] = true;
            chain.push(y);
            self.extend_chain(k, chain, used, out);
            chain.pop();
            used[r] = false;
        }
    }

    /// Every `(k+1)`-class whose packet meets `Inv_k(w)` in anything other
    /// than a lone first or last member. For finite `w` this is every
    /// `(k+1)`-subset of `[n]` whose packet meets `Inv_k(w)`.
    pub fn interacting_classes(&self, k: usize) -> Result<Vec<KClass>> {
        let n = self.w.n();
        let inv = self.inv_k(k)?;
        let mut found: HashSet<KClass> = HashSet::new();
        let mut add = |y: &KClass, z: i64| {
            let r = self.res(z);
            if y.residues().contains(&r) {
                return;
            }
            let mut e = y.elems.clone();
            let pos = e.partition_point(|&v| v < z);
            e.insert(pos, z);
            found.insert(KClass::from_sorted(n, e));
        };
        for y in &inv {
            if self.w.is_finite() {
                for z in 1..=n as i64 {
                    add(y, z);
                }
                continue;
            }
            let (lo, hi) = (y.elems[0], *y.elems.last().unwrap());
            for z in lo + 1..hi {
                add(y, z);
            }
            for &x in &y.elems {
                for &d in &self.up[self.res(x)] {
                    add(y, x + d);
                }
                for &d in &self.down[self.res(x)] {
                    add(y, x - d);
                }
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

pub fn is_k_inversion(w: &AffinePermutation, x: &KClass) -> bool {
    x.elems
        .windows(2)
        .all(|p| w.apply_inverse(p[0]) > w.apply_inverse(p[1]))
}

pub fn inv_k(w: &AffinePermutation, k: usize) -> Result<Vec<KClass>> {
    InversionTable::new(w).inv_k(k)
}

/// Positions `(a, b)` (0-based, `a < b`) of the pairs of `X` that are not
/// 2-inversions.
fn non_inverted_pairs(w: &AffinePermutation, x: &KClass) -> Vec<(usize, usize)> {
    let vals: Vec<i64> = x.elems.iter().map(|&v| w.apply_inverse(v)).collect();
    let mut out = Vec::new();
    for a in 0..vals.len() {
        for b in a + 1..vals.len() {
            if vals[a] < vals[b] {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn is_quasi_inversion(w: &AffinePermutation, x: &KClass) -> bool {
    x.k() >= 2 && non_inverted_pairs(w, x).len() == 1
}

/// The unique non-inverted pair of a quasi-inversion, as 0-based positions.
pub(crate) fn quasi_pair(w: &AffinePermutation, x: &KClass) -> Option<(usize, usize)> {
    match non_inverted_pairs(w, x).as_slice() {
        [p] if x.k() >= 2 => Some(*p),
        _ => None,
    }
}

/// Classifies `P(X) ∩ Inv_k(w)` for `X` of size `k+1`.
pub fn classify_packet_intersection(w: &AffinePermutation, x: &KClass) -> Result<PacketShape> {
    if x.k() < 2 {
        return Err(Error::Invariant(format!("packet of {x} needs at least two entries")));
    }
    let hits: Vec<usize> = (1..=x.k())
        .filter(|&i| is_k_inversion(w, &x.omit(i)))
        .collect();
    match hits.as_slice() {
        [] => Ok(PacketShape::Empty),
        h if h.len() == x.k() => Ok(PacketShape::Full),
        [i] => Ok(PacketShape::Singleton(*i)),
        [i, j] if j == &(i + 1) => Ok(PacketShape::AdjacentPair(*i)),
        _ => Err(Error::ShapeViolation {
            w: w.to_string(),
            x: x.to_string(),
            intersection: hits,
        }),
    }
}
