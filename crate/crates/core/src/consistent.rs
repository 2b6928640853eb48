//! Consistent sets and the poset `C_w(n,k)`, the graph `G_R`, and the
//! checks relating them to admissible orders: the reversal-set isomorphism
//! `B_w(n,k) → C_w(n,k+1)`, rankedness, suffix sets, and the bijection
//! between maximal chains and admissible orders.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::admissible::{admissibility_violation, HigherBruhat};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::kclass::KClass;
use crate::perm::AffinePermutation;
use crate::permanent::Level;
use crate::poset::{poset_isomorphic_with, topological_order, FinitePoset, RelationSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ConsistencyViolation {
    /// `element` is in the set but its lower cover `missing` is not.
    NotIdeal { element: KClass, missing: KClass },
    /// The set meets the packet of `class` in neither a prefix nor a suffix.
    Packet { class: KClass },
}

impl fmt::Display for ConsistencyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyViolation::NotIdeal { element, missing } => {
                write!(f, "{element} is in the set but {missing} below it is not")
            }
            ConsistencyViolation::Packet { class } => {
                write!(f, "the set meets the packet of {class} in neither a prefix nor a suffix")
            }
        }
    }
}

/// The first violated condition for `set ⊆ Inv_k(w)`, or `None`.
pub fn consistency_violation(level: &Level, set: &FixedBitSet, strict: bool) -> Option<ConsistencyViolation> {
    let inv = level.inversions();
    let p = level.poset();
    for b in set.ones() {
        if let Some(&a) = p.lower_covers(b).iter().find(|&&a| !set.contains(a)) {
            return Some(ConsistencyViolation::NotIdeal {
                element: inv[b].clone(),
                missing: inv[a].clone(),
            });
        }
    }
    level
        .packet_violation(set, strict)
        .map(|x| ConsistencyViolation::Packet { class: x.clone() })
}

pub fn is_consistent(w: &AffinePermutation, k: usize, set: &[KClass]) -> Result<bool> {
    let level = Level::new(w, k)?;
    let bits = level.set_of(set)?;
    Ok(consistency_violation(&level, &bits, false).is_none())
}

/// Consistent subsets of `Inv_k(w)`, found by filtering order ideals.
pub fn enumerate_consistent(level: &Level, strict: bool) -> Vec<FixedBitSet> {
    level
        .poset()
        .order_ideals()
        .filter(|s| level.packet_violation(s, strict).is_none())
        .collect()
}

/// `C_w(n,k)`: consistent sets ordered by single-step inclusion. Elements of
/// the poset are indices into [`sets`](Self::sets), sorted by size and then
/// lexicographically.
pub struct ConsistentPoset {
    level: Level,
    sets: Vec<FixedBitSet>,
    lookup: HashMap<FixedBitSet, usize>,
    pub poset: FinitePoset<usize>,
}

impl ConsistentPoset {
    pub fn new(level: Level) -> Result<Self> {
        Self::with_mode(level, false)
    }

    pub fn with_mode(level: Level, strict: bool) -> Result<Self> {
        let mut sets = enumerate_consistent(&level, strict);
        sets.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        let lookup: HashMap<FixedBitSet, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut rel = RelationSet::new((0..sets.len()).collect());
        for (i, s) in sets.iter().enumerate() {
            for x in 0..level.len() {
                if s.contains(x) {
                    continue;
                }
                let mut t = s.clone();
                t.insert(x);
                if let Some(&j) = lookup.get(&t) {
                    rel.relate(i, j);
                }
            }
        }
        let poset = rel.close()?;
        Ok(ConsistentPoset {
            level,
            sets,
            lookup,
            poset,
        })
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn id_of(&self, set: &FixedBitSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    pub fn labels(&self, id: usize) -> Vec<KClass> {
        self.level.classes_of(&self.sets[id])
    }

    /// Ranked with rank equal to cardinality, least element `∅` and greatest
    /// element `Inv_k(w)`.
    pub fn rank_report(&self) -> RankSummary {
        let r = self.poset.ranked_check();
        let full = self.level.len();
        let rank_is_size = r
            .rank
            .as_ref()
            .is_some_and(|rank| rank.iter().zip(&self.sets).all(|(&k, s)| k == s.count_ones(..)));
        let min_is_empty = self.poset.minimal().iter().all(|&i| self.sets[i].count_ones(..) == 0);
        let max_is_full = self.poset.maximal().iter().all(|&i| self.sets[i].count_ones(..) == full);
        RankSummary {
            ranked: r.ranked,
            rank_is_size,
            unique_min: r.unique_min && min_is_empty,
            unique_max: r.unique_max && max_is_full,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let elements: Vec<Vec<KClass>> = (0..self.sets.len()).map(|i| self.labels(i)).collect();
        serde_json::json!({
            "elements": elements,
            "covers": self.poset.cover_indices().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        self.poset.to_dot("C", |&i| {
            let l: Vec<String> = self.labels(i).iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", l.join(","))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankSummary {
    pub ranked: bool,
    pub rank_is_size: bool,
    pub unique_min: bool,
    pub unique_max: bool,
}

impl RankSummary {
    pub fn holds(&self) -> bool {
        self.ranked && self.rank_is_size && self.unique_min && self.unique_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcTag {
    Quasi,
    Reversal,
    Complement,
    Congruence,
}

impl ArcTag {
    /// Graphviz attributes: black, red, blue and dashed.
    pub fn dot_attrs(self) -> &'static str {
        match self {
            ArcTag::Quasi => "color=black",
            ArcTag::Reversal => "color=red",
            ArcTag::Complement => "color=blue",
            ArcTag::Congruence => "style=dashed",
        }
    }
}

/// `G_R` for `R ⊆ Inv_{k+1}(w)`: a digraph on `Inv_k(w)` with arcs from the
/// generating relations of the permanent poset and from packet
/// orientations chosen by `R`.
pub struct GrGraph<'a> {
    level: &'a Level,
    /// `(tail, head, tag)` as indices into `Inv_k(w)`, sorted.
    pub arcs: Vec<(usize, usize, ArcTag)>,
}

/// Builds `G_R`; `r` is indexed like [`Level::upper`].
pub fn build_gr<'a>(level: &'a Level, r: &FixedBitSet) -> GrGraph<'a> {
    let mut arcs: Vec<(usize, usize, ArcTag)> = Vec::new();
    arcs.extend(level.quasi_relations().iter().map(|&(a, b)| (a, b, ArcTag::Quasi)));
    for (x, members) in level.packets().iter().enumerate() {
        for pair in members.windows(2) {
            if r.contains(x) {
                arcs.push((pair[0], pair[1], ArcTag::Reversal));
            } else {
                arcs.push((pair[1], pair[0], ArcTag::Complement));
            }
        }
    }
    arcs.extend(
        level
            .congruence_relations()
            .iter()
            .map(|&(a, b)| (a, b, ArcTag::Congruence)),
    );
    arcs.sort_unstable();
    arcs.dedup_by_key(|a| (a.0, a.1));
    GrGraph { level, arcs }
}

impl GrGraph<'_> {
    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.level.len()];
        for &(a, b, _) in &self.arcs {
            succ[a].push(b);
        }
        succ
    }

    pub fn count(&self, tag: ArcTag) -> usize {
        self.arcs.iter().filter(|a| a.2 == tag).count()
    }

    /// A directed cycle `[c0, ..., c0]`, or `None` when acyclic.
    pub fn find_cycle(&self) -> Option<Vec<KClass>> {
        let inv = self.level.inversions();
        topological_order(&self.successors())
            .err()
            .map(|c| c.into_iter().map(|i| inv[i].clone()).collect())
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(&self.successors()).is_ok()
    }

    pub fn to_digraph(&self) -> Digraph<KClass, ArcTag> {
        let inv = self.level.inversions();
        let mut g = Digraph::new();
        for x in inv {
            g.add_node(x.clone());
        }
        for &(a, b, t) in &self.arcs {
            g.add_arc(&inv[a], &inv[b], t).expect("nodes exist");
        }
        g
    }

    pub fn to_dot(&self) -> String {
        self.to_digraph()
            .to_dot("G_R", true, |x| x.to_string(), |t| t.dot_attrs().to_string())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let inv = self.level.inversions();
        let arcs: Vec<serde_json::Value> = self
            .arcs
            .iter()
            .map(|&(a, b, t)| serde_json::json!({ "from": inv[a], "to": inv[b], "tag": t }))
            .collect();
        serde_json::json!({ "nodes": inv, "arcs": arcs })
    }
}

/// `L(Inv_k(w), ≤_R)`: linear extensions of the closure of `G_R`, as index
/// sequences. Fails with [`Error::Cycle`] when `G_R` is cyclic.
pub fn rev_inverse(level: &Level, r: &FixedBitSet) -> Result<Vec<Vec<usize>>> {
    let g = build_gr(level, r);
    if let Some(c) = g.find_cycle() {
        return Err(Error::Cycle(c.iter().map(|x| x.to_string()).collect()));
    }
    let mut rel = RelationSet::new((0..level.len()).collect::<Vec<usize>>());
    rel.extend(g.arcs.iter().map(|&(a, b, _)| (a, b)));
    let poset = rel.close()?;
    Ok(poset.linear_extensions().collect())
}

/// `S(R) = {Y ∈ Inv_{k+1}(w) : Y_1 ∈ R}`, indexed like [`Level::upper`].
pub fn suffix_set(level: &Level, r: &FixedBitSet) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(level.upper().len());
    for (y, members) in level.packets().iter().enumerate() {
        if r.contains(members[0]) {
            s.insert(y);
        }
    }
    s
}

/// Outcome of comparing `B_w(n,k)` with `C_w(n,k+1)` through reversal sets.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RevReport {
    pub classes: usize,
    pub consistent_sets: usize,
    /// Consistent sets when packets of every `(k+2)`-class meeting
    /// `Inv_{k+1}(w)` are tested, not only those of `Inv_{k+2}(w)`.
    pub strict_consistent_sets: usize,
    /// Classes whose reversal set fails that wider packet test.
    pub strict_packet_failures: usize,
    pub rev_inverse_checked: usize,
    pub ranked: bool,
    pub failures: Vec<String>,
}

impl RevReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `Rev` is a poset isomorphism `B_w(n,k) → C_w(n,k+1)`, that
/// `Rev^{-1}(R)` is the linear extensions of `G_R`, and that `C_w(n,k+1)`
/// is ranked by cardinality. The wider packet test is counted, not failed:
/// a quasi-inversion packet `{X_i, X_{i+1}}` may meet a reversal set in a
/// lone middle member.
pub fn rev_isomorphism_check(w: &AffinePermutation, k: usize) -> Result<RevReport> {
    let bruhat = HigherBruhat::new(Level::new(w, k)?)?;
    let consistent = ConsistentPoset::new(Level::new(w, k + 1)?)?;
    Ok(compare_bruhat_and_consistent(&bruhat, &consistent))
}

pub fn compare_bruhat_and_consistent(bruhat: &HigherBruhat, consistent: &ConsistentPoset) -> RevReport {
    let oc = &bruhat.classes;
    let level = oc.level();
    let upper = consistent.level();
    let mut r = RevReport {
        classes: oc.classes().len(),
        consistent_sets: consistent.sets().len(),
        strict_consistent_sets: enumerate_consistent(upper, true).len(),
        ..Default::default()
    };
    r.failures.extend(oc.audit().failures.iter().cloned());

    let mut image = vec![usize::MAX; oc.classes().len()];
    let mut hit = vec![false; consistent.sets().len()];
    for (c, members) in oc.classes().iter().enumerate() {
        let rev = oc.class_reversal(c);
        if members.iter().any(|&o| oc.reversal(o) != rev) {
            r.failures.push(format!("reversal set is not constant on class {c}"));
        }
        if consistency_violation(upper, rev, true).is_some() {
            r.strict_packet_failures += 1;
        }
        match consistent.id_of(rev) {
            Some(id) if !hit[id] => {
                hit[id] = true;
                image[c] = id;
            }
            Some(_) => r.failures.push(format!("class {c} repeats a reversal set")),
            None => r
                .failures
                .push(format!("reversal set of class {c} is not consistent")),
        }
    }
    if let Some(id) = hit.iter().position(|h| !h) {
        let l: Vec<String> = consistent.labels(id).iter().map(|x| x.to_string()).collect();
        r.failures
            .push(format!("consistent set {{{}}} is not a reversal set", l.join(",")));
    }
    if r.failures.is_empty() {
        match poset_isomorphic_with(&bruhat.poset, &consistent.poset, |&c| image[c]) {
            Ok(true) => {}
            Ok(false) => r.failures.push("Rev does not preserve covers".into()),
            Err(e) => r.failures.push(e.to_string()),
        }
    }

    // Rev^{-1}(R) is the commutation class with reversal set R.
    for (c, members) in oc.classes().iter().enumerate() {
        let rev = oc.class_reversal(c);
        match rev_inverse(level, rev) {
            Ok(mut orders) => {
                orders.sort();
                let mut class: Vec<Vec<usize>> = members.iter().map(|&o| oc.orders()[o].clone()).collect();
                class.sort();
                if orders != class {
                    r.failures.push(format!(
                        "linear extensions of G_R for class {c} number {} but the class has {}",
                        orders.len(),
                        class.len()
                    ));
                }
                r.rev_inverse_checked += 1;
            }
            Err(e) => r.failures.push(format!("G_R for class {c}: {e}")),
        }
    }

    let rank = consistent.rank_report();
    r.ranked = rank.holds();
    if !r.ranked {
        r.failures.push(format!("C_w(n,k+1) rank check failed: {rank:?}"));
    }
    r
}

/// Outcome of matching maximal chains of `C_w(n,k)` with `A_w(n,k)`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ChainReport {
    pub chains: usize,
    pub orders: usize,
    pub failures: Vec<String>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Reads each maximal chain `∅ ⊂ R_1 ⊂ ... ⊂ Inv_k(w)` of `C_w(n,k)` as the
/// order of singleton differences and checks that this is a bijection onto
/// the admissible orders of level `k`.
pub fn chain_order_bijection_check(w: &AffinePermutation, k: usize) -> Result<ChainReport> {
    let consistent = ConsistentPoset::new(Level::new(w, k)?)?;
    let orders: Vec<Vec<usize>> = crate::admissible::enumerate_admissible(consistent.level()).collect();
    Ok(compare_chains_and_orders(&consistent, &orders))
}

/// `orders` must be the admissible orders of `consistent.level()`.
pub fn compare_chains_and_orders(consistent: &ConsistentPoset, orders: &[Vec<usize>]) -> ChainReport {
    let level = consistent.level();
    let mut r = ChainReport {
        orders: orders.len(),
        ..Default::default()
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for chain in consistent.poset.maximal_chains() {
        r.chains += 1;
        let sets: Vec<&FixedBitSet> = chain.iter().map(|&i| &consistent.sets()[i]).collect();
        if sets[0].count_ones(..) != 0 || sets.last().unwrap().count_ones(..) != level.len() {
            r.failures
                .push(format!("maximal chain {} does not run from the empty set to Inv_k", r.chains));
            continue;
        }
        let mut order = Vec::with_capacity(level.len());
        for pair in sets.windows(2) {
            let mut d = pair[1].clone();
            d.difference_with(pair[0]);
            order.extend(d.ones());
        }
        match admissibility_violation(level, &order) {
            Ok(None) => {}
            Ok(Some(v)) => r.failures.push(format!("chain order is not admissible: {v}")),
            Err(e) => r.failures.push(e.to_string()),
        }
        if !seen.insert(order) {
            r.failures.push("two maximal chains give the same order".into());
        }
    }
    let all: HashSet<&Vec<usize>> = orders.iter().collect();
    if seen.len() != all.len() || seen.iter().any(|o| !all.contains(o)) {
        r.failures.push(format!(
            "{} chain orders against {} admissible orders",
            seen.len(),
            all.len()
        ));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kclass::parse_class;

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    fn classes(s: &str, n: usize) -> Vec<KClass> {
        s.split_whitespace().map(|t| parse_class(t, n).unwrap()).collect()
    }

    #[test]
    fn consistency_examples() {
        let w = perm("(6,4,5,2,3,1)");
        assert!(is_consistent(&w, 4, &[]).unwrap());
        assert!(is_consistent(&w, 4, &classes("1246 1256", 6)).unwrap());
        assert!(!is_consistent(&w, 4, &classes("1246", 6)).unwrap());
        assert!(is_consistent(&w, 4, &classes("1234", 6)).is_err());
    }

    #[test]
    fn consistent_sets_of_the_running_example() {
        let w = perm("(6,4,5,2,3,1)");
        let c = ConsistentPoset::new(Level::new(&w, 4).unwrap()).unwrap();
        assert_eq!(c.sets().len(), 6);
        assert_eq!(c.poset.cover_indices().len(), 6);
        assert!(c.rank_report().holds());
        let identity = ConsistentPoset::new(Level::new(&AffinePermutation::identity(5), 3).unwrap()).unwrap();
        assert_eq!(identity.sets().len(), 1);
    }

    #[test]
    fn gr_of_the_running_example() {
        let w = perm("(6,4,5,2,3,1)");
        let level = Level::new(&w, 3).unwrap();
        let upper = Level::new(&w, 4).unwrap();
        let r = upper.set_of(&classes("1256 1356", 6)).unwrap();
        let g = build_gr(&level, &r);
        assert_eq!(g.count(ArcTag::Quasi), 10);
        assert_eq!(g.count(ArcTag::Reversal), 6);
        assert_eq!(g.count(ArcTag::Complement), 6);
        assert!(g.is_acyclic());
        let orders = rev_inverse(&level, &r).unwrap();
        assert!(!orders.is_empty());
        for o in &orders {
            assert_eq!(crate::admissible::reversal_set(&level, o), r);
        }
    }

    #[test]
    fn rev_isomorphism() {
        for (w, k) in [("(6,4,5,2,3,1)", 3), ("(6,4,5,2,3,1)", 1), ("(1,7,2,0)", 2), ("(1,2,3)", 1), ("(-3,-2,8,7)", 2)] {
            let r = rev_isomorphism_check(&perm(w), k).unwrap();
            assert!(r.passed(), "{w} {k}: {:?}", r.failures);
        }
        let r = rev_isomorphism_check(&perm("(6,4,5,2,3,1)"), 3).unwrap();
        assert_eq!((r.classes, r.consistent_sets, r.strict_consistent_sets), (6, 6, 1));
        assert_eq!(r.strict_packet_failures, 5);
    }

    #[test]
    fn chains_and_orders() {
        for (w, k) in [("(6,4,5,2,3,1)", 4), ("(6,4,5,2,3,1)", 2), ("(1,7,2,0)", 2), ("(1,2,3,4)", 2)] {
            let r = chain_order_bijection_check(&perm(w), k).unwrap();
            assert!(r.passed(), "{w} {k}: {:?}", r.failures);
        }
        let r = chain_order_bijection_check(&perm("(1,7,2,0)"), 2).unwrap();
        assert_eq!((r.chains, r.orders), (10, 10));
    }

    #[test]
    fn suffix_sets() {
        let w = perm("(6,4,5,2,3,1)");
        let level = Level::new(&w, 3).unwrap();
        let upper = Level::new(&w, 4).unwrap();
        let mut all = FixedBitSet::with_capacity(level.len());
        all.insert_range(..);
        assert_eq!(suffix_set(&level, &all).count_ones(..), level.upper().len());
        let none = FixedBitSet::with_capacity(level.len());
        assert_eq!(suffix_set(&level, &none).count_ones(..), 0);
        for r in enumerate_consistent(&level, false) {
            let s = suffix_set(&level, &r);
            assert_eq!(consistency_violation(&upper, &s, false), None);
        }
    }

    #[test]
    fn affine_gr_has_congruence_arcs() {
        let w = perm("(-3,-2,8,7)");
        let level = Level::new(&w, 2).unwrap();
        let g = build_gr(&level, &FixedBitSet::with_capacity(level.upper().len()));
        let a = level.index_of(&parse_class("[1,3]", 4).unwrap()).unwrap();
        let b = level.index_of(&parse_class("[1,7]", 4).unwrap()).unwrap();
        assert!(g.arcs.contains(&(a, b, ArcTag::Congruence)));
    }
}
