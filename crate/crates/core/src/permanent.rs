//! The permanent poset `P_w(n,k)` on `Inv_k(w)`, generated by
//! quasi-inversion relations and, for affine `w`, congruence relations.
//!
//! [`Level`] bundles everything the admissible-order and consistent-set
//! layers need at one `k`: the sorted `Inv_k(w)` and `Inv_{k+1}(w)`, the
//! packets of `Inv_{k+1}(w)` as index lists, the generating relations and
//! the closed poset.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::kclass::{is_prefix_mask, is_suffix_mask, quasi_pair, InversionTable, KClass};
use crate::perm::AffinePermutation;
use crate::poset::{FinitePoset, RelationSet};

/// `v_i^{(n,k)}`: `i` zeros followed by `k - i` copies of `n`.
pub fn congruence_vector(n: usize, k: usize, i: usize) -> Result<Vec<i64>> {
    if i >= k {
        return Err(Error::OutOfRange { index: i, bound: k });
    }
    Ok((0..k).map(|j| if j < i { 0 } else { n as i64 }).collect())
}

/// A `(k+1)`-class outside `Inv_{k+1}(w)` whose packet still meets
/// `Inv_k(w)`. Used by the strict packet test.
#[derive(Clone, Debug)]
pub struct PartialPacket {
    pub class: KClass,
    /// Index in `Inv_k(w)` of each `X_i`, or `None` when `X_i` is not an
    /// inversion.
    pub members: Vec<Option<usize>>,
}

#[derive(Clone, Debug)]
pub struct Level {
    w: AffinePermutation,
    k: usize,
    inv: Vec<KClass>,
    index: HashMap<KClass, usize>,
    upper: Vec<KClass>,
    packets: Vec<Vec<usize>>,
    quasi: Vec<(usize, usize)>,
    congruence: Vec<(usize, usize)>,
    partial: Vec<PartialPacket>,
    poset: FinitePoset<KClass>,
}

impl Level {
    /// Builds level `k`. Requires `k >= 1`, and `k >= 2` for affine `w`.
    /// Fails with [`Error::Cycle`] if the generating relations are cyclic.
    pub fn new(w: &AffinePermutation, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Unsupported("level 0 has no packets".into()));
        }
        let table = InversionTable::new(w);
        let inv = table.inv_k(k)?;
        let index: HashMap<KClass, usize> = inv.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let upper = table.inv_k(k + 1)?;
        let member_index = |x: &KClass| -> Vec<Option<usize>> {
            (1..=x.k()).map(|i| index.get(&x.omit(i)).copied()).collect()
        };

        let mut packets = Vec::with_capacity(upper.len());
        for x in &upper {
            let members: Option<Vec<usize>> = member_index(x).into_iter().collect();
            let members = members.ok_or_else(|| {
                Error::Invariant(format!("a packet member of the inversion {x} is not an inversion"))
            })?;
            packets.push(members);
        }

        let mut quasi = Vec::new();
        let mut partial = Vec::new();
        for x in table.interacting_classes(k)? {
            if upper.binary_search(&x).is_ok() {
                continue;
            }
            if let Some((a, b)) = quasi_pair(w, &x) {
                if b != a + 1 {
                    return Err(Error::Invariant(format!(
                        "quasi-inversion {x} of {w} fails at non-adjacent entries {} and {}",
                        a + 1,
                        b + 1
                    )));
                }
                let i = a + 1;
                let (lo, hi) = match (index.get(&x.omit(i)), index.get(&x.omit(i + 1))) {
                    (Some(&p), Some(&q)) => (p, q),
                    _ => {
                        return Err(Error::Invariant(format!(
                            "quasi-inversion {x} of {w} has a packet member outside Inv_{k}"
                        )))
                    }
                };
                quasi.push(if (k - i) % 2 == 1 { (lo, hi) } else { (hi, lo) });
            }
            partial.push(PartialPacket {
                members: member_index(&x),
                class: x,
            });
        }
        quasi.sort_unstable();

        let mut congruence = Vec::new();
        if !w.is_finite() {
            for (p, x) in inv.iter().enumerate() {
                for i in 1..k {
                    let v = congruence_vector(w.n(), k, i)?;
                    let Some(y) = x.shifted(&v) else { continue };
                    if let Some(&q) = index.get(&y) {
                        congruence.push(if (k - i) % 2 == 1 { (p, q) } else { (q, p) });
                    }
                }
            }
            congruence.sort_unstable();
        }

        let mut rel = RelationSet::new(inv.clone());
        rel.extend(
            quasi
                .iter()
                .chain(&congruence)
                .map(|&(a, b)| (inv[a].clone(), inv[b].clone())),
        );
        let poset = rel.close()?;
        Ok(Level {
            w: w.clone(),
            k,
            inv,
            index,
            upper,
            packets,
            quasi,
            congruence,
            partial,
            poset,
        })
    }

    pub fn permutation(&self) -> &AffinePermutation {
        &self.w
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `Inv_k(w)`, sorted.
    pub fn inversions(&self) -> &[KClass] {
        &self.inv
    }

    pub fn index_of(&self, x: &KClass) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `Inv_{k+1}(w)`, sorted.
    pub fn upper(&self) -> &[KClass] {
        &self.upper
    }

    pub fn upper_index_of(&self, x: &KClass) -> Option<usize> {
        self.upper.binary_search(x).ok()
    }

    /// For each element of [`upper`](Self::upper), the indices of
    /// `X_1, ..., X_{k+1}` in `Inv_k(w)`.
    pub fn packets(&self) -> &[Vec<usize>] {
        &self.packets
    }

    /// Quasi-inversion relations `(lesser, greater)` as indices.
    pub fn quasi_relations(&self) -> &[(usize, usize)] {
        &self.quasi
    }

    /// Congruence relations `(lesser, greater)` as indices; empty for finite
    /// `w`.
    pub fn congruence_relations(&self) -> &[(usize, usize)] {
        &self.congruence
    }

    pub fn partial_packets(&self) -> &[PartialPacket] {
        &self.partial
    }

    pub fn poset(&self) -> &FinitePoset<KClass> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv.is_empty()
    }

    /// The first `(k+1)`-class whose packet meets `set` in neither a prefix
    /// nor a suffix. With `strict`, classes outside `Inv_{k+1}(w)` are tested
    /// as well.
    pub fn packet_violation(&self, set: &FixedBitSet, strict: bool) -> Option<&KClass> {
        for (x, members) in self.upper.iter().zip(&self.packets) {
            let mask: Vec<bool> = members.iter().map(|&m| set.contains(m)).collect();
            if !is_prefix_mask(&mask) && !is_suffix_mask(&mask) {
                return Some(x);
            }
        }
        if strict {
            for pp in &self.partial {
                let mask: Vec<bool> = pp.members.iter().map(|m| m.is_some_and(|m| set.contains(m))).collect();
                if !is_prefix_mask(&mask) && !is_suffix_mask(&mask) {
                    return Some(&pp.class);
                }
            }
        }
        None
    }

    pub fn set_of(&self, classes: &[KClass]) -> Result<FixedBitSet> {
        let mut set = FixedBitSet::with_capacity(self.inv.len());
        for x in classes {
            let i = self
                .index_of(x)
                .ok_or_else(|| Error::NotASubset(format!("{x} is not in Inv_{}({})", self.k, self.w)))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn classes_of(&self, set: &FixedBitSet) -> Vec<KClass> {
        set.ones().map(|i| self.inv[i].clone()).collect()
    }

    /// As [`set_of`](Self::set_of), over `Inv_{k+1}(w)`.
    pub fn upper_set_of(&self, classes: &[KClass]) -> Result<FixedBitSet> {
        let mut set = FixedBitSet::with_capacity(self.upper.len());
        for x in classes {
            let i = self
                .upper_index_of(x)
                .ok_or_else(|| Error::NotASubset(format!("{x} is not in Inv_{}({})", self.k + 1, self.w)))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn classes_of_upper(&self, set: &FixedBitSet) -> Vec<KClass> {
        set.ones().map(|i| self.upper[i].clone()).collect()
    }
}

/// Quasi-inversion relations over `Inv_k(w)` as class pairs.
pub fn quasi_inversion_relations(w: &AffinePermutation, k: usize) -> Result<RelationSet<KClass>> {
    let level = Level::new(w, k)?;
    Ok(relations_of(&level, level.quasi_relations()))
}

/// Congruence relations over `Inv_k(w)` as class pairs.
pub fn congruence_relations(w: &AffinePermutation, k: usize) -> Result<RelationSet<KClass>> {
    let level = Level::new(w, k)?;
    Ok(relations_of(&level, level.congruence_relations()))
}

fn relations_of(level: &Level, pairs: &[(usize, usize)]) -> RelationSet<KClass> {
    let inv = level.inversions();
    let mut rel = RelationSet::new(inv.to_vec());
    rel.extend(pairs.iter().map(|&(a, b)| (inv[a].clone(), inv[b].clone())));
    rel
}

pub fn permanent_poset(w: &AffinePermutation, k: usize) -> Result<FinitePoset<KClass>> {
    Ok(Level::new(w, k)?.poset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kclass::parse_class;

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    fn cls(s: &str, n: usize) -> KClass {
        parse_class(s, n).unwrap()
    }

    #[test]
    fn congruence_vectors() {
        assert_eq!(congruence_vector(4, 3, 1).unwrap(), vec![0, 4, 4]);
        assert_eq!(congruence_vector(4, 3, 0).unwrap(), vec![4, 4, 4]);
        assert_eq!(congruence_vector(6, 2, 1).unwrap(), vec![0, 6]);
        assert!(congruence_vector(4, 3, 3).is_err());
    }

    #[test]
    fn rank_three_poset_of_the_running_example() {
        let w = perm("(6,4,5,2,3,1)");
        let p = permanent_poset(&w, 3).unwrap();
        assert_eq!(p.len(), 12);
        assert_eq!(p.cover_indices().len(), 10);
        assert!(p.less_than(&cls("134", 6), &cls("124", 6)));
        assert!(p.less_than(&cls("256", 6), &cls("346", 6)));
        assert!(!p.comparable(p.index_of(&cls("136", 6)).unwrap(), p.index_of(&cls("256", 6)).unwrap()));
    }

    #[test]
    fn rank_four_poset_is_a_diamond() {
        let w = perm("(6,4,5,2,3,1)");
        let p = permanent_poset(&w, 4).unwrap();
        let covers: Vec<(String, String)> = p
            .covers()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let mut expected = vec![
            ("[1,2,5,6]", "[1,2,4,6]"),
            ("[1,2,5,6]", "[1,3,5,6]"),
            ("[1,2,4,6]", "[1,3,4,6]"),
            ("[1,3,5,6]", "[1,3,4,6]"),
        ]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect::<Vec<_>>();
        let mut got = covers;
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn rank_one_relations_are_coinversions() {
        let w = perm("(6,4,5,2,3,1)");
        let rel = quasi_inversion_relations(&w, 1).unwrap();
        let mut pairs: Vec<(i64, i64)> = rel
            .pairs()
            .iter()
            .map(|(a, b)| (a.elements()[0], b.elements()[0]))
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![(2, 3), (4, 5)]);
    }

    #[test]
    fn identity_has_empty_levels() {
        let level = Level::new(&AffinePermutation::identity(4), 2).unwrap();
        assert!(level.is_empty());
        assert!(level.quasi_relations().is_empty());
    }

    #[test]
    fn affine_congruence_relations() {
        let w = perm("(-3,-2,8,7)");
        let rel = congruence_relations(&w, 2).unwrap();
        assert!(rel.pairs().contains(&(cls("[1,3]", 4), cls("[1,7]", 4))));
        let level = Level::new(&w, 3).unwrap();
        let a = cls("[2,3,4]", 4);
        let b = cls("[2,3,8]", 4);
        // w^{-1}(8) = 3 exceeds w^{-1}(3) = 0, so only [2,3,4] is an inversion
        // and no relation joins the pair.
        assert!(level.index_of(&a).is_some());
        assert!(level.index_of(&b).is_none());
        let finite = congruence_relations(&perm("(6,4,5,2,3,1)"), 3).unwrap();
        assert!(finite.pairs().is_empty());
    }

    #[test]
    fn affine_reversal_set_is_an_ideal() {
        let w = perm("(-3,-2,8,7)");
        let level = Level::new(&w, 3).unwrap();
        let set = level
            .set_of(&[cls("[1,3,4]", 4), cls("[2,7,8]", 4), cls("[1,7,8]", 4)])
            .unwrap();
        assert!(level.poset().is_order_ideal(&set));
    }

    #[test]
    fn unsupported_levels() {
        assert!(Level::new(&perm("(1,7,2,0)"), 1).is_err());
        assert!(Level::new(&perm("(1,2,3)"), 0).is_err());
    }
}
