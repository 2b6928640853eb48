//! Affine permutations in window notation.
//!
//! An element of the affine symmetric group is an `n`-periodic bijection of
//! the integers, `w(x + n) = w(x) + n`, whose window `(w(1), ..., w(n))` sums
//! to `n(n+1)/2`. The finite symmetric group sits inside as the windows that
//! permute `1..=n`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{FinitePoset, RelationSet};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawWindow", into = "RawWindow")]
pub struct AffinePermutation {
    n: usize,
    window: Vec<i64>,
    inverse: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawWindow {
    n: usize,
    window: Vec<i64>,
}

impl TryFrom<RawWindow> for AffinePermutation {
    type Error = Error;
    fn try_from(raw: RawWindow) -> Result<Self> {
        AffinePermutation::from_window(raw.n, raw.window)
    }
}

impl From<AffinePermutation> for RawWindow {
    fn from(w: AffinePermutation) -> Self {
        RawWindow {
            n: w.n,
            window: w.window,
        }
    }
}

/// An element `[x, y]` of the inversion set, stored with `x` in `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct InversionPair {
    pub x: i64,
    pub y: i64,
}

impl InversionPair {
    /// Shifts `(a, b)` with `a < b` by a multiple of `n` so the first entry
    /// lands in `1..=n`.
    pub fn canonical(n: usize, a: i64, b: i64) -> Self {
        debug_assert!(a < b);
        let n = n as i64;
        let shift = (a - 1).div_euclid(n) * n;
        InversionPair {
            x: a - shift,
            y: b - shift,
        }
    }
}

impl fmt::Display for InversionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

fn residue(n: usize, x: i64) -> usize {
    x.rem_euclid(n as i64) as usize
}

impl AffinePermutation {
    pub fn from_window(n: usize, values: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        if values.len() != n {
            return Err(Error::WindowLength {
                n,
                got: values.len(),
            });
        }
        let mut seen: Vec<Option<i64>> = vec![None; n];
        for &v in &values {
            let r = residue(n, v);
            if let Some(prev) = seen[r] {
                return Err(Error::RepeatedResidue { n, a: prev, b: v });
            }
            seen[r] = Some(v);
        }
        let expected = (n * (n + 1) / 2) as i64;
        let got: i64 = values.iter().sum();
        if got != expected {
            return Err(Error::WindowSum { expected, got });
        }
        Ok(Self::from_valid(n, values))
    }

    fn from_valid(n: usize, window: Vec<i64>) -> Self {
        let ni = n as i64;
        let mut inverse = vec![0; n];
        for (i, &v) in window.iter().enumerate() {
            // v = q*n + r with r in 1..=n, so w^{-1}(r) = (i+1) - q*n
            let q = (v - 1).div_euclid(ni);
            let r = (v - 1).rem_euclid(ni) as usize;
            inverse[r] = i as i64 + 1 - q * ni;
        }
        AffinePermutation { n, window, inverse }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "rank must be positive");
        Self::from_valid(n, (1..=n as i64).collect())
    }

    /// The simple transposition `s_i`, with `i` read modulo `n`. Requires `n >= 2`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(n >= 2, "simple transpositions need rank at least 2");
        Self::identity(n).mul_simple(i % n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i64 + 1)
    }

    /// True when `w` permutes `1..=n`, i.e. lies in the finite symmetric group.
    pub fn is_finite(&self) -> bool {
        let n = self.n as i64;
        self.window.iter().all(|&v| (1..=n).contains(&v))
    }

    pub fn apply(&self, x: i64) -> i64 {
        let n = self.n as i64;
        let q = (x - 1).div_euclid(n);
        let r = (x - 1).rem_euclid(n) as usize;
        self.window[r] + q * n
    }

    pub fn apply_inverse(&self, x: i64) -> i64 {
        let n = self.n as i64;
        let q = (x - 1).div_euclid(n);
        let r = (x - 1).rem_euclid(n) as usize;
        self.inverse[r] + q * n
    }

    pub fn inverse(&self) -> Self {
        AffinePermutation {
            n: self.n,
            window: self.inverse.clone(),
            inverse: self.window.clone(),
        }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let window = other.window.iter().map(|&v| self.apply(v)).collect();
        Self::from_valid(self.n, window)
    }

    /// Right multiplication `w s_i`, which swaps window positions `i` and `i+1`.
    pub fn mul_simple(&self, i: usize) -> Self {
        let n = self.n;
        assert!(n >= 2, "simple transpositions need rank at least 2");
        let i = i % n;
        let mut window = self.window.clone();
        if i == 0 {
            let first = window[0];
            let last = window[n - 1];
            window[0] = last - n as i64;
            window[n - 1] = first + n as i64;
        } else {
            window.swap(i - 1, i);
        }
        Self::from_valid(n, window)
    }

    /// Whether `ℓ(w s_i) < ℓ(w)`, i.e. `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let i = (i % self.n) as i64;
        self.apply(i) > self.apply(i + 1)
    }

    pub fn right_descents(&self) -> Vec<usize> {
        if self.n < 2 {
            return Vec::new();
        }
        (0..self.n).filter(|&i| self.has_right_descent(i)).collect()
    }

    /// Coxeter length, computed from the window as
    /// `Σ_{i<j} |⌊(w(j) − w(i)) / n⌋|`.
    pub fn length(&self) -> usize {
        let n = self.n as i64;
        let mut total = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                total += (self.window[j] - self.window[i]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        total
    }

    /// The inversion set `{(x, y) : x ∈ [n], x < y, w⁻¹(x) > w⁻¹(y)}`.
    ///
    /// For fixed `x` and residue class of `y`, the inverted `y` form an initial
    /// run above `x`, so each scan stops at the first non-inversion.
    pub fn inv2(&self) -> Vec<InversionPair> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for x in 1..=n {
            let wx = self.apply_inverse(x);
            for r in 0..n {
                let step = (r - x).rem_euclid(n);
                if step == 0 {
                    continue;
                }
                let mut y = x + step;
                while wx > self.apply_inverse(y) {
                    out.push(InversionPair { x, y });
                    y += n;
                }
            }
        }
        out.sort();
        out
    }

    /// The pair added to the inversion set by `w ↦ w s_i` when `i` is an ascent.
    pub fn ascent_pair(&self, i: usize) -> Option<InversionPair> {
        let i = (i % self.n) as i64;
        let a = self.apply(i);
        let b = self.apply(i + 1);
        (a < b).then(|| InversionPair::canonical(self.n, a, b))
    }

    /// The interval `[id, w]` in the weak order, with covers `v ⋖ v s_i`.
    pub fn weak_interval(&self) -> FinitePoset<AffinePermutation> {
        let target: HashSet<InversionPair> = self.inv2().into_iter().collect();
        let id = Self::identity(self.n);
        let mut seen = HashMap::new();
        seen.insert(id.clone(), 0usize);
        let mut elements = vec![id.clone()];
        let mut covers = Vec::new();
        let mut queue = VecDeque::from([id]);
        while let Some(v) = queue.pop_front() {
            if self.n < 2 {
                break;
            }
            for i in 0..self.n {
                let Some(pair) = v.ascent_pair(i) else { continue };
                if !target.contains(&pair) {
                    continue;
                }
                let u = v.mul_simple(i);
                if !seen.contains_key(&u) {
                    seen.insert(u.clone(), elements.len());
                    elements.push(u.clone());
                    queue.push_back(u.clone());
                }
                covers.push((v.clone(), u));
            }
        }
        let mut rel = RelationSet::new(elements);
        for (a, b) in covers {
            rel.relate(a, b);
        }
        rel.close().expect("weak order relations are acyclic")
    }

    /// All elements of length at most `max_len`, sorted by length then window.
    pub fn enumerate_up_to_length(n: usize, max_len: usize) -> Vec<AffinePermutation> {
        let id = Self::identity(n);
        let mut all = vec![id.clone()];
        if n < 2 {
            return all;
        }
        let mut layer = vec![id];
        for _ in 0..max_len {
            let mut next = HashSet::new();
            for v in &layer {
                for i in 0..n {
                    if !v.has_right_descent(i) {
                        next.insert(v.mul_simple(i));
                    }
                }
            }
            let mut next: Vec<_> = next.into_iter().collect();
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    /// All of the finite symmetric group `S_n`, sorted by length then window.
    pub fn finite_group(n: usize) -> Vec<AffinePermutation> {
        let longest = n * n.saturating_sub(1) / 2;
        Self::enumerate_up_to_length(n, longest)
            .into_iter()
            .filter(|w| w.is_finite())
            .collect()
    }

    /// The longest element `(n, n-1, ..., 1)` of `S_n`.
    pub fn longest_finite(n: usize) -> Self {
        Self::from_valid(n, (1..=n as i64).rev().collect())
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"(-3,-2,8,7)"`; the parentheses are optional.
impl FromStr for AffinePermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            what: "window",
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        let values = t
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|e| err(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_window(values.len(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(AffinePermutation::from_window(4, vec![1, 7, 2, 0]).is_ok());
        assert!(w("(1,2,3,4)").is_identity());
        assert!(AffinePermutation::from_window(4, vec![-3, -2, 8, 7]).is_ok());
        assert!(matches!(
            AffinePermutation::from_window(4, vec![1, 2, 3, 8]),
            Err(Error::WindowSum { expected: 10, got: 14 })
        ));
        assert!(matches!(
            AffinePermutation::from_window(4, vec![1, 5, 3, 1]),
            Err(Error::RepeatedResidue { .. })
        ));
        assert!(matches!(
            AffinePermutation::from_window(3, vec![1, 2]),
            Err(Error::WindowLength { .. })
        ));
        assert_eq!(AffinePermutation::from_window(0, vec![]), Err(Error::ZeroRank));
    }

    #[test]
    fn apply_examples() {
        let v = w("(1,7,2,0)");
        assert_eq!(v.apply(2), 7);
        assert_eq!(v.apply(6), 11);
        assert_eq!(AffinePermutation::identity(4).apply(-3), -3);
        for x in -20..20 {
            assert_eq!(v.apply(x + 4), v.apply(x) + 4);
            assert_eq!(v.apply_inverse(v.apply(x)), x);
        }
    }

    #[test]
    fn group_operations() {
        let v = w("(6,4,5,2,3,1)");
        assert_eq!(v.inverse(), v);
        let u = w("(1,7,2,0)");
        assert!(u.compose(&u.inverse()).is_identity());
        assert_eq!(AffinePermutation::simple(4, 0).window(), &[0, 2, 3, 5]);
        for i in 0..4 {
            let s = AffinePermutation::simple(4, i);
            assert!(s.compose(&s).is_identity());
            assert_eq!(u.mul_simple(i), u.compose(&s));
        }
    }

    #[test]
    fn inversion_sets_and_lengths() {
        assert!(AffinePermutation::identity(4).inv2().is_empty());
        let u = w("(1,7,2,0)");
        assert_eq!(u.inv2().len(), 7);
        assert_eq!(u.length(), 7);
        assert_eq!(w("(6,4,5,2,3,1)").inv2().len(), 13);
        assert_eq!(w("(-3,-2,8,7)").length(), 9);
    }

    #[test]
    fn inv2_of_finite_matches_pair_count() {
        let v = w("(6,4,5,2,3,1)");
        let mut expected = Vec::new();
        for i in 1..=6 {
            for j in i + 1..=6 {
                if v.apply_inverse(i) > v.apply_inverse(j) {
                    expected.push(InversionPair { x: i, y: j });
                }
            }
        }
        assert_eq!(v.inv2(), expected);
    }

    #[test]
    fn weak_interval_shapes() {
        let id = AffinePermutation::identity(3);
        assert_eq!(id.weak_interval().len(), 1);
        let longest = w("(3,2,1)");
        let p = longest.weak_interval();
        assert_eq!(p.len(), 6);
        let u = w("(1,7,2,0)");
        assert_eq!(u.weak_interval().maximal_chains().count(), 10);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(AffinePermutation::enumerate_up_to_length(3, 0).len(), 1);
        let one = AffinePermutation::enumerate_up_to_length(3, 1);
        assert_eq!(one.len(), 4);
        for i in 0..3 {
            assert!(one.contains(&AffinePermutation::simple(3, i)));
        }
        assert_eq!(AffinePermutation::finite_group(4).len(), 24);
    }

    #[test]
    fn json_round_trip() {
        let u = w("(-3,-2,8,7)");
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"n":4,"window":[-3,-2,8,7]}"#);
        let back: AffinePermutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
        assert!(serde_json::from_str::<AffinePermutation>(r#"{"n":4,"window":[1,2,3,5]}"#).is_err());
    }
}
