//! Admissible orders of `Inv_k(w)`, their reversal sets, commutation classes
//! and packet flips, and the higher Bruhat order `B_w(n,k)` built from flip
//! reachability.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kclass::KClass;
use crate::perm::{AffinePermutation, InversionPair};
use crate::permanent::Level;
use crate::poset::{ExtensionConstraint, FinitePoset, RelationSet};
use crate::words::{BraidGraph, Word};

/// Why a total order fails to be admissible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `greater` is placed before `lesser` although `lesser < greater`.
    Relation { lesser: KClass, greater: KClass },
    /// The order restricted to the packet of `class` is neither lex nor
    /// antilex.
    Packet { class: KClass },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Relation { lesser, greater } => {
                write!(f, "{greater} precedes {lesser} but {lesser} < {greater}")
            }
            Violation::Packet { class } => write!(f, "packet of {class} is neither lex nor antilex"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlipDirection {
    LexToAntilex,
    AntilexToLex,
}

fn positions(m: usize, order: &[usize]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; m];
    if order.len() != m {
        return Err(Error::NotAPermutation(format!("{} entries for {m} inversions", order.len())));
    }
    for (p, &x) in order.iter().enumerate() {
        if x >= m || pos[x] != usize::MAX {
            return Err(Error::NotAPermutation(format!("index {x} repeated or out of range")));
        }
        pos[x] = p;
    }
    Ok(pos)
}

/// Converts a sequence of classes into indices of `level`.
pub fn order_indices(level: &Level, order: &[KClass]) -> Result<Vec<usize>> {
    let idx = order
        .iter()
        .map(|x| {
            level
                .index_of(x)
                .ok_or_else(|| Error::NotAPermutation(format!("{x} is not in Inv_{}", level.k())))
        })
        .collect::<Result<Vec<_>>>()?;
    positions(level.len(), &idx)?;
    Ok(idx)
}

/// The first violated condition, or `None` when `order` is admissible.
pub fn admissibility_violation(level: &Level, order: &[usize]) -> Result<Option<Violation>> {
    let pos = positions(level.len(), order)?;
    let inv = level.inversions();
    for &(a, b) in level.poset().cover_indices() {
        if pos[a] > pos[b] {
            return Ok(Some(Violation::Relation {
                lesser: inv[a].clone(),
                greater: inv[b].clone(),
            }));
        }
    }
    for (x, members) in level.upper().iter().zip(level.packets()) {
        let up = members.windows(2).all(|p| pos[p[0]] < pos[p[1]]);
        let down = members.windows(2).all(|p| pos[p[0]] > pos[p[1]]);
        if !up && !down {
            return Ok(Some(Violation::Packet { class: x.clone() }));
        }
    }
    Ok(None)
}

pub fn is_admissible(w: &AffinePermutation, k: usize, order: &[KClass]) -> Result<bool> {
    let level = Level::new(w, k)?;
    let idx = order_indices(&level, order)?;
    Ok(admissibility_violation(&level, &idx)?.is_none())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Open,
    Antilex,
    Lex,
}

/// Prunes partial linear extensions whose restriction to some packet can no
/// longer be lex or antilex.
struct PacketConstraint {
    /// `(packet, position of the element within X_1..X_{k+1})`.
    member_of: Vec<Vec<(usize, usize)>>,
    size: usize,
    placed: Vec<usize>,
    dir: Vec<Dir>,
}

impl PacketConstraint {
    fn new(level: &Level) -> Self {
        let mut member_of = vec![Vec::new(); level.len()];
        for (p, members) in level.packets().iter().enumerate() {
            for (j, &x) in members.iter().enumerate() {
                member_of[x].push((p, j));
            }
        }
        PacketConstraint {
            member_of,
            size: level.k() + 1,
            placed: vec![0; level.packets().len()],
            dir: vec![Dir::Open; level.packets().len()],
        }
    }
}

impl ExtensionConstraint for PacketConstraint {
    fn allows(&self, x: usize) -> bool {
        self.member_of[x].iter().all(|&(p, j)| {
            let c = self.placed[p];
            match self.dir[p] {
                Dir::Open => j == 0 || j + 1 == self.size,
                Dir::Antilex => j == c,
                Dir::Lex => j + 1 + c == self.size,
            }
        })
    }

    fn push(&mut self, x: usize) {
        for &(p, j) in &self.member_of[x] {
            if self.placed[p] == 0 {
                self.dir[p] = if j == 0 { Dir::Antilex } else { Dir::Lex };
            }
            self.placed[p] += 1;
        }
    }

    fn pop(&mut self, x: usize) {
        for &(p, _) in &self.member_of[x] {
            self.placed[p] -= 1;
            if self.placed[p] == 0 {
                self.dir[p] = Dir::Open;
            }
        }
    }
}

/// All admissible orders of `level`, as index sequences, in lexicographic
/// order.
pub fn enumerate_admissible(level: &Level) -> impl Iterator<Item = Vec<usize>> + '_ {
    level
        .poset()
        .linear_extensions_with(PacketConstraint::new(level))
}

/// `Rev(order)` as a subset of `Inv_{k+1}(w)` (indices into
/// [`Level::upper`]).
pub fn reversal_set(level: &Level, order: &[usize]) -> FixedBitSet {
    let mut pos = vec![0; level.len()];
    for (p, &x) in order.iter().enumerate() {
        pos[x] = p;
    }
    let mut rev = FixedBitSet::with_capacity(level.upper().len());
    for (i, members) in level.packets().iter().enumerate() {
        if pos[members[0]] < pos[members[1]] {
            rev.insert(i);
        }
    }
    rev
}

/// Whether `x` and `y` commute with respect to `w`: incomparable in the
/// permanent poset and not both in one packet.
pub fn commute_wrt_w(w: &AffinePermutation, k: usize, x: &KClass, y: &KClass) -> Result<bool> {
    let level = Level::new(w, k)?;
    let (Some(a), Some(b)) = (level.index_of(x), level.index_of(y)) else {
        return Err(Error::NotASubset(format!("{x} or {y} is not in Inv_{k}({w})")));
    };
    Ok(commute_indices(&level, a, b))
}

fn commute_indices(level: &Level, a: usize, b: usize) -> bool {
    let inv = level.inversions();
    a != b && !level.poset().comparable(a, b) && !inv[a].shares_packet(&inv[b])
}

/// Counters and failures collected while checking that commutations and
/// flips stay inside the admissible orders and act on reversal sets as
/// expected.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MoveAudit {
    pub commutations: usize,
    pub flips: usize,
    pub failures: Vec<String>,
}

/// The admissible orders of one level partitioned into commutation classes.
pub struct OrderClasses {
    level: Level,
    orders: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    commute: Vec<FixedBitSet>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    reversal: Vec<FixedBitSet>,
    audit: MoveAudit,
}

impl OrderClasses {
    pub fn new(level: Level) -> Self {
        let orders: Vec<Vec<usize>> = enumerate_admissible(&level).collect();
        Self::from_orders(level, orders)
    }

    /// Partitions `orders`, which should be the full set of admissible
    /// orders of `level`. Moves leaving the set are recorded in the audit.
    pub fn from_orders(level: Level, orders: Vec<Vec<usize>>) -> Self {
        let m = level.len();
        let mut commute = vec![FixedBitSet::with_capacity(m); m];
        for (a, row) in commute.iter_mut().enumerate() {
            for b in 0..m {
                if commute_indices(&level, a, b) {
                    row.insert(b);
                }
            }
        }
        let lookup: HashMap<Vec<usize>, usize> =
            orders.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let reversal: Vec<FixedBitSet> = orders.iter().map(|o| reversal_set(&level, o)).collect();
        let mut audit = MoveAudit::default();
        let mut class_of = vec![usize::MAX; orders.len()];
        let mut classes = Vec::new();
        for start in 0..orders.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let order = &orders[i];
                for p in 0..order.len().saturating_sub(1) {
                    if !commute[order[p]].contains(order[p + 1]) {
                        continue;
                    }
                    audit.commutations += 1;
                    let mut next = order.clone();
                    next.swap(p, p + 1);
                    let Some(&j) = lookup.get(&next) else {
                        audit.failures.push(format!(
                            "commutation at position {p} of order {i} leaves the admissible orders"
                        ));
                        continue;
                    };
                    if reversal[i] != reversal[j] {
                        audit
                            .failures
                            .push(format!("commutation changes the reversal set of order {i}"));
                    }
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        OrderClasses {
            level,
            orders,
            lookup,
            commute,
            class_of,
            classes,
            reversal,
            audit,
        }
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn order_id(&self, order: &[usize]) -> Option<usize> {
        self.lookup.get(order).copied()
    }

    pub fn class_of(&self, order_id: usize) -> usize {
        self.class_of[order_id]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Reversal set of an order (indices into [`Level::upper`]).
    pub fn reversal(&self, order_id: usize) -> &FixedBitSet {
        &self.reversal[order_id]
    }

    /// Reversal set shared by the members of a class (that of its first
    /// member).
    pub fn class_reversal(&self, class: usize) -> &FixedBitSet {
        &self.reversal[self.classes[class][0]]
    }

    pub fn audit(&self) -> &MoveAudit {
        &self.audit
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.commute[a].contains(b)
    }

    pub fn labels(&self, order_id: usize) -> Vec<KClass> {
        let inv = self.level.inversions();
        self.orders[order_id].iter().map(|&i| inv[i].clone()).collect()
    }

    /// Packets occupying consecutive positions of `order`, with the
    /// direction a flip would take.
    pub fn saturated_packets(&self, order: &[usize]) -> Vec<(usize, FlipDirection)> {
        let mut pos = vec![0; order.len()];
        for (p, &x) in order.iter().enumerate() {
            pos[x] = p;
        }
        let mut out = Vec::new();
        for (i, members) in self.level.packets().iter().enumerate() {
            let lo = members.iter().map(|&x| pos[x]).min().unwrap();
            let hi = members.iter().map(|&x| pos[x]).max().unwrap();
            if hi - lo + 1 == members.len() {
                let dir = if pos[members[0]] < pos[members[1]] {
                    FlipDirection::AntilexToLex
                } else {
                    FlipDirection::LexToAntilex
                };
                out.push((i, dir));
            }
        }
        out
    }

    /// Packets flippable in some representative of `class`.
    pub fn flippable_packets(&self, class: usize) -> Vec<(KClass, FlipDirection)> {
        let mut found: Vec<(usize, FlipDirection)> = self.classes[class]
            .iter()
            .flat_map(|&o| self.saturated_packets(&self.orders[o]))
            .collect();
        found.sort_by_key(|&(i, d)| (i, d == FlipDirection::AntilexToLex));
        found.dedup();
        found
            .into_iter()
            .map(|(i, d)| (self.level.upper()[i].clone(), d))
            .collect()
    }
}

/// Reverses the block occupied by the packet `packet` (an index into
/// [`Level::upper`]) in `order`.
pub fn apply_flip(level: &Level, order: &[usize], packet: usize) -> Result<Vec<usize>> {
    let members = level
        .packets()
        .get(packet)
        .ok_or(Error::OutOfRange {
            index: packet,
            bound: level.packets().len(),
        })?;
    let pos = positions(level.len(), order)?;
    let lo = members.iter().map(|&x| pos[x]).min().unwrap();
    let hi = members.iter().map(|&x| pos[x]).max().unwrap();
    if hi - lo + 1 != members.len() {
        return Err(Error::NotSaturated(level.upper()[packet].to_string()));
    }
    let mut out = order.to_vec();
    out[lo..=hi].reverse();
    Ok(out)
}

/// A lex-to-antilex flip between two commutation classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlipEdge {
    pub from: usize,
    pub to: usize,
    /// Index into [`Level::upper`].
    pub packet: usize,
}

/// `B_w(n,k)`: commutation classes ordered by commutations and
/// lex-to-antilex flips.
pub struct HigherBruhat {
    pub classes: OrderClasses,
    pub flips: Vec<FlipEdge>,
    /// Elements are class ids.
    pub poset: FinitePoset<usize>,
}

impl HigherBruhat {
    pub fn new(level: Level) -> Result<Self> {
        Self::from_classes(OrderClasses::new(level))
    }

    pub fn from_classes(mut classes: OrderClasses) -> Result<Self> {
        let mut flips = Vec::new();
        let mut audit = std::mem::take(&mut classes.audit);
        for (i, order) in classes.orders.iter().enumerate() {
            for (p, dir) in classes.saturated_packets(order) {
                audit.flips += 1;
                let flipped = apply_flip(&classes.level, order, p)?;
                let Some(j) = classes.order_id(&flipped) else {
                    audit
                        .failures
                        .push(format!("flip of packet {} in order {i} leaves the admissible orders", classes.level.upper()[p]));
                    continue;
                };
                let mut diff = classes.reversal[i].clone();
                diff.symmetric_difference_with(&classes.reversal[j]);
                if diff.ones().collect::<Vec<_>>() != vec![p] {
                    audit.failures.push(format!(
                        "flip of packet {} in order {i} changes the reversal set by more than that packet",
                        classes.level.upper()[p]
                    ));
                }
                if dir == FlipDirection::LexToAntilex {
                    flips.push(FlipEdge {
                        from: classes.class_of[i],
                        to: classes.class_of[j],
                        packet: p,
                    });
                }
            }
        }
        classes.audit = audit;
        flips.sort_by_key(|e| (e.from, e.to, e.packet));
        flips.dedup();
        let mut rel = RelationSet::new((0..classes.classes.len()).collect());
        for e in &flips {
            if e.from == e.to {
                return Err(Error::Cycle(vec![e.from.to_string(), e.to.to_string()]));
            }
            rel.relate(e.from, e.to);
        }
        let poset = rel.close()?;
        Ok(HigherBruhat {
            classes,
            flips,
            poset,
        })
    }

    pub fn level(&self) -> &Level {
        self.classes.level()
    }

    /// Reversal set of each class as sorted classes of `Inv_{k+1}(w)`.
    pub fn reversal_labels(&self, class: usize) -> Vec<KClass> {
        let upper = self.level().upper();
        self.classes.class_reversal(class).ones().map(|i| upper[i].clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let elements: Vec<serde_json::Value> = (0..self.classes.classes().len())
            .map(|c| {
                serde_json::json!({
                    "id": c,
                    "representative": self.classes.labels(self.classes.classes()[c][0]),
                    "size": self.classes.classes()[c].len(),
                    "reversal_set": self.reversal_labels(c),
                })
            })
            .collect();
        serde_json::json!({
            "elements": elements,
            "covers": self.poset.covers().into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }

    /// The flip digraph: one arc per lex-to-antilex flip, labelled by the
    /// packet.
    pub fn to_dot(&self) -> String {
        let upper = self.level().upper();
        let mut s = String::from("digraph B {\n  rankdir=BT;\n");
        for c in 0..self.classes.classes().len() {
            let rev: Vec<String> = self.reversal_labels(c).iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("  c{c} [label=\"{{{}}}\"];\n", rev.join(",")));
        }
        for e in &self.flips {
            s.push_str(&format!("  c{} -> c{} [label=\"{}\"];\n", e.from, e.to, upper[e.packet]));
        }
        s.push_str("}\n");
        s
    }
}

/// The reflection order of a reduced word as a sequence of 2-classes.
pub fn reflection_order(word: &Word) -> Result<Vec<KClass>> {
    if !word.is_reduced() {
        return Err(Error::NotReduced(word.to_string()));
    }
    let n = word.n();
    let mut v = AffinePermutation::identity(n);
    let mut out = Vec::with_capacity(word.len());
    for &i in word.letters() {
        let (a, b) = (v.apply(i as i64), v.apply(i as i64 + 1));
        out.push(KClass::from_pair(n, InversionPair::canonical(n, a, b)));
        v = v.mul_simple(i);
    }
    Ok(out)
}

/// Outcome of matching reduced words with 2-admissible orders.
#[derive(Clone, Debug, Default, Serialize)]
pub struct WordOrderReport {
    pub words: usize,
    pub orders: usize,
    pub word_classes: usize,
    pub order_classes: usize,
    pub braid_moves: usize,
    pub lex_flips: usize,
    pub hasse_matches_braid_graph: bool,
    pub failures: Vec<String>,
}

impl WordOrderReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.hasse_matches_braid_graph
    }
}

/// Checks that reflection orders give a bijection from reduced words onto
/// `A_w(n,2)` carrying commutation classes onto commutation classes and
/// directed braid moves onto lex-to-antilex flips, and that the Hasse
/// diagram of `B_w(n,2)` is the braid graph.
pub fn word_order_bijection_check(w: &AffinePermutation) -> Result<WordOrderReport> {
    let braid = BraidGraph::new(w);
    let bruhat = HigherBruhat::new(Level::new(w, 2)?)?;
    Ok(compare_words_and_orders(&braid, &bruhat))
}

pub fn compare_words_and_orders(braid: &BraidGraph, bruhat: &HigherBruhat) -> WordOrderReport {
    let words = &braid.classes.words;
    let oc = &bruhat.classes;
    let level = oc.level();
    let mut r = WordOrderReport {
        words: words.len(),
        orders: oc.orders().len(),
        word_classes: braid.classes.len(),
        order_classes: oc.classes().len(),
        ..Default::default()
    };
    r.failures.extend(oc.audit().failures.iter().cloned());

    let mut order_of_word = Vec::with_capacity(words.len());
    let mut word_of_order = vec![usize::MAX; oc.orders().len()];
    for (wi, u) in words.iter().enumerate() {
        let id = reflection_order(u)
            .and_then(|rho| order_indices(level, &rho))
            .ok()
            .and_then(|idx| oc.order_id(&idx));
        match id {
            Some(id) if word_of_order[id] == usize::MAX => {
                word_of_order[id] = wi;
                order_of_word.push(id);
            }
            Some(_) => {
                r.failures.push(format!("two words share the reflection order of {u}"));
                order_of_word.push(usize::MAX);
            }
            None => {
                r.failures.push(format!("reflection order of {u} is not admissible"));
                order_of_word.push(usize::MAX);
            }
        }
    }
    if let Some(o) = word_of_order.iter().position(|&x| x == usize::MAX) {
        r.failures
            .push(format!("admissible order {o} is not the reflection order of a reduced word"));
    }
    if !r.failures.is_empty() {
        return r;
    }

    // Commutation classes correspond.
    let mut class_map = vec![usize::MAX; braid.classes.len()];
    for (wi, &o) in order_of_word.iter().enumerate() {
        let (wc, c) = (braid.classes.class_of[wi], oc.class_of(o));
        if class_map[wc] == usize::MAX {
            class_map[wc] = c;
        } else if class_map[wc] != c {
            r.failures
                .push(format!("commutation class of {} splits across order classes", words[wi]));
        }
    }
    let mut images = class_map.clone();
    images.sort_unstable();
    images.dedup();
    if images.len() != oc.classes().len() {
        r.failures
            .push("word classes and order classes are not in bijection".to_string());
    }

    // Directed braid moves correspond to lex-to-antilex flips.
    for (wi, u) in words.iter().enumerate() {
        for (_, next) in u.braid_moves() {
            r.braid_moves += 1;
            let Some(wj) = braid.classes.index_of(&next) else { continue };
            let (a, b) = (&oc.orders()[order_of_word[wi]], &oc.orders()[order_of_word[wj]]);
            let flips: Vec<usize> = oc
                .saturated_packets(a)
                .into_iter()
                .filter(|&(_, d)| d == FlipDirection::LexToAntilex)
                .map(|(x, _)| x)
                .filter(|&x| apply_flip(level, a, x).ok().as_deref() == Some(&b[..]))
                .collect();
            if flips.is_empty() {
                r.failures
                    .push(format!("braid move {u} -> {next} is not a lex-to-antilex flip"));
            }
        }
    }
    for (o, order) in oc.orders().iter().enumerate() {
        for (x, d) in oc.saturated_packets(order) {
            if d != FlipDirection::LexToAntilex {
                continue;
            }
            r.lex_flips += 1;
            let flipped = apply_flip(level, order, x).expect("packet is saturated");
            let Some(o2) = oc.order_id(&flipped) else { continue };
            let (u, v) = (&words[word_of_order[o]], &words[word_of_order[o2]]);
            if !u.braid_moves().iter().any(|(_, m)| m == v) {
                r.failures.push(format!(
                    "flip at {} does not come from a braid move of {u}",
                    level.upper()[x]
                ));
            }
        }
    }
    if r.braid_moves != r.lex_flips {
        r.failures.push(format!(
            "{} braid moves against {} lex-to-antilex flips",
            r.braid_moves, r.lex_flips
        ));
    }

    // Hasse diagram of B_w(n,2) against G(w).
    let mut to_word_class = vec![usize::MAX; oc.classes().len()];
    for (wc, &c) in class_map.iter().enumerate() {
        if c != usize::MAX {
            to_word_class[c] = wc;
        }
    }
    r.hasse_matches_braid_graph = r.failures.is_empty()
        && bruhat
            .poset
            .hasse()
            .is_isomorphic_with(&braid.graph, |&c| to_word_class[c])
            .unwrap_or(false);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kclass::parse_class;

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    fn order(s: &str, n: usize) -> Vec<KClass> {
        s.split_whitespace().map(|t| parse_class(t, n).unwrap()).collect()
    }

    const RHO1: &str = "134 124 135 136 125 126 156 256 146 246 356 346";
    const RHO2: &str = "134 256 135 136 156 356 124 126 146 246 346 125";
    const RHO3: &str = "134 256 135 136 156 356 246 146 126 124 346 125";
    const RHO4: &str = "134 256 356 156 136 135 124 126 146 246 346 125";
    const SIGMA: &str = "134 124 135 136 256 156 126 125 146 246 356 346";

    #[test]
    fn table_orders_are_admissible() {
        let w = perm("(6,4,5,2,3,1)");
        assert!(is_admissible(&w, 3, &order(RHO1, 6)).unwrap());
        let mut swapped = order(RHO1, 6);
        swapped.swap(0, 1);
        let level = Level::new(&w, 3).unwrap();
        let idx = order_indices(&level, &swapped).unwrap();
        assert_eq!(
            admissibility_violation(&level, &idx).unwrap(),
            Some(Violation::Relation {
                lesser: parse_class("134", 6).unwrap(),
                greater: parse_class("124", 6).unwrap(),
            })
        );
        assert!(is_admissible(&w, 3, &order("134 124", 6)).is_err());
    }

    #[test]
    fn reversal_sets_of_table_orders() {
        let w = perm("(6,4,5,2,3,1)");
        let level = Level::new(&w, 3).unwrap();
        let rev = |s: &str| -> Vec<String> {
            let idx = order_indices(&level, &order(s, 6)).unwrap();
            reversal_set(&level, &idx)
                .ones()
                .map(|i| level.upper()[i].to_string())
                .collect()
        };
        assert!(rev(RHO1).is_empty());
        assert_eq!(rev(RHO2), vec!["[1,2,5,6]"]);
        assert_eq!(rev(RHO3), vec!["[1,2,4,6]", "[1,2,5,6]"]);
    }

    #[test]
    fn count_and_classes_of_the_running_example() {
        let w = perm("(6,4,5,2,3,1)");
        let b = HigherBruhat::new(Level::new(&w, 3).unwrap()).unwrap();
        assert_eq!(b.classes.orders().len(), 1228);
        assert_eq!(b.classes.classes().len(), 6);
        assert!(b.classes.audit().failures.is_empty());
        assert_eq!(b.poset.cover_indices().len(), 6);
        let level = b.level();
        let id = |s: &str| {
            let idx = order_indices(level, &order(s, 6)).unwrap();
            b.classes.class_of(b.classes.order_id(&idx).unwrap())
        };
        assert_eq!(id(RHO2), id(SIGMA));
        assert_ne!(id(RHO1), id(RHO2));
    }

    #[test]
    fn flips_between_table_orders() {
        let w = perm("(6,4,5,2,3,1)");
        let level = Level::new(&w, 3).unwrap();
        let x1246 = level.upper_index_of(&parse_class("1246", 6).unwrap()).unwrap();
        let x1256 = level.upper_index_of(&parse_class("1256", 6).unwrap()).unwrap();
        let rho2 = order_indices(&level, &order(RHO2, 6)).unwrap();
        let rho3 = order_indices(&level, &order(RHO3, 6)).unwrap();
        assert_eq!(apply_flip(&level, &rho2, x1246).unwrap(), rho3);
        let sigma = order_indices(&level, &order(SIGMA, 6)).unwrap();
        let rho1 = order_indices(&level, &order(RHO1, 6)).unwrap();
        assert_eq!(apply_flip(&level, &sigma, x1256).unwrap(), rho1);
        assert!(matches!(apply_flip(&level, &rho1, x1246), Err(Error::NotSaturated(_))));
        let twice = apply_flip(&level, &apply_flip(&level, &rho2, x1246).unwrap(), x1246).unwrap();
        assert_eq!(twice, rho2);
        let rho4 = order_indices(&level, &order(RHO4, 6)).unwrap();
        let x1356 = level.upper_index_of(&parse_class("1356", 6).unwrap()).unwrap();
        assert_eq!(apply_flip(&level, &rho2, x1356).unwrap(), rho4);
    }

    #[test]
    fn commutation_examples() {
        let w = perm("(6,4,5,2,3,1)");
        let c = |a: &str, b: &str| {
            commute_wrt_w(&w, 3, &parse_class(a, 6).unwrap(), &parse_class(b, 6).unwrap()).unwrap()
        };
        assert!(c("136", "256"));
        assert!(!c("134", "124"));
        assert!(!c("256", "156"));
    }

    #[test]
    fn reflection_orders() {
        let w = Word::parse(4, "0121032").unwrap();
        let rho: Vec<String> = reflection_order(&w).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(
            rho,
            vec!["[4,5]", "[4,6]", "[4,7]", "[2,3]", "[1,3]", "[4,11]", "[2,7]"]
        );
        assert!(reflection_order(&Word::parse(3, "").unwrap()).unwrap().is_empty());
        assert!(reflection_order(&Word::parse(4, "11").unwrap()).is_err());
        let affine = reflection_order(&Word::parse(4, "232124134").unwrap()).unwrap();
        assert_eq!(affine, order("[2,3] [2,4] [3,4] [1,4] [1,3] [2,8] [2,7] [1,8] [1,7]", 4));
    }

    #[test]
    fn affine_example_order() {
        let w = perm("(-3,-2,8,7)");
        let level = Level::new(&w, 2).unwrap();
        let rho = order("[2,3] [2,4] [3,4] [1,4] [1,3] [2,8] [2,7] [1,8] [1,7]", 4);
        let idx = order_indices(&level, &rho).unwrap();
        assert_eq!(admissibility_violation(&level, &idx).unwrap(), None);
        let rev: Vec<String> = reversal_set(&level, &idx)
            .ones()
            .map(|i| level.upper()[i].to_string())
            .collect();
        let mut expected = vec!["[1,3,4]", "[2,7,8]", "[1,7,8]"];
        expected.sort();
        assert_eq!(rev, expected);
    }

    #[test]
    fn word_order_bijection() {
        for w in ["(1,7,2,0)", "(3,2,1)", "(-3,-2,8,7)", "(1,2,3)"] {
            let r = word_order_bijection_check(&perm(w)).unwrap();
            assert!(r.passed(), "{w}: {:?}", r.failures);
        }
        let r = word_order_bijection_check(&perm("(1,7,2,0)")).unwrap();
        assert_eq!((r.words, r.orders, r.word_classes, r.order_classes), (10, 10, 5, 5));
    }

    #[test]
    fn rank_one_orders_are_the_weak_interval() {
        let w = perm("(6,4,5,2,3,1)");
        let b = HigherBruhat::new(Level::new(&w, 1).unwrap()).unwrap();
        let interval = w.weak_interval();
        assert_eq!(b.classes.orders().len(), interval.len());
        assert_eq!(b.classes.classes().len(), interval.len());
        assert_eq!(b.poset.cover_indices().len(), interval.cover_indices().len());
    }

    #[test]
    fn identity_is_a_point() {
        let b = HigherBruhat::new(Level::new(&AffinePermutation::identity(4), 2).unwrap()).unwrap();
        assert_eq!(b.classes.orders(), &[Vec::<usize>::new()]);
        assert_eq!(b.poset.len(), 1);
    }
}
