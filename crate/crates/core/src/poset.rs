//! Finite posets given by cover relations, built by closing a generating
//! relation, with the enumeration machinery used throughout the crate:
//! linear extensions, order ideals, maximal chains, rank checks and
//! isomorphism tests.

use std::collections::{HashMap, HashSet};
use std::fmt::{Debug, Display};
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Largest poset accepted by the hint-free isomorphism test.
pub const HINT_FREE_LIMIT: usize = 12;

/// Generating pairs `a < b` over a fixed label set. May be cyclic.
#[derive(Clone, Debug)]
pub struct RelationSet<T> {
    elements: Vec<T>,
    pairs: Vec<(T, T)>,
}

impl<T: Clone + Eq + Hash + Debug> RelationSet<T> {
    pub fn new(elements: Vec<T>) -> Self {
        RelationSet {
            elements,
            pairs: Vec::new(),
        }
    }

    pub fn relate(&mut self, lesser: T, greater: T) {
        self.pairs.push((lesser, greater));
    }

    pub fn pairs(&self) -> &[(T, T)] {
        &self.pairs
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn extend(&mut self, pairs: impl IntoIterator<Item = (T, T)>) {
        self.pairs.extend(pairs);
    }

    /// Transitive closure reduced to covers. Fails with a witness cycle when
    /// the closure is not antisymmetric.
    pub fn close(self) -> Result<FinitePoset<T>> {
        let index: HashMap<T, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut idx_pairs = Vec::with_capacity(self.pairs.len());
        for (a, b) in &self.pairs {
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::UnknownLabel(format!("{a:?}")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::UnknownLabel(format!("{b:?}")))?;
            idx_pairs.push((ia, ib));
        }
        let covers = close_indices(self.elements.len(), &idx_pairs).map_err(|cycle| {
            Error::Cycle(
                cycle
                    .into_iter()
                    .map(|i| format!("{:?}", self.elements[i]))
                    .collect(),
            )
        })?;
        Ok(FinitePoset::from_reduced_covers(self.elements, index, covers))
    }
}

/// Closes `pairs` over `0..m` and returns the sorted cover relations, or a
/// cycle `[c0, c1, ..., c0]` when some element is below itself.
pub(crate) fn close_indices(m: usize, pairs: &[(usize, usize)]) -> std::result::Result<Vec<(usize, usize)>, Vec<usize>> {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut seen = HashSet::new();
    for &(a, b) in pairs {
        if a == b {
            return Err(vec![a, a]);
        }
        if seen.insert((a, b)) {
            succ[a].push(b);
            pred[b].push(a);
        }
    }
    let order = topological_order(&succ)?;
    let mut below = vec![FixedBitSet::with_capacity(m); m];
    for &b in &order {
        let mut acc = FixedBitSet::with_capacity(m);
        for &a in &pred[b] {
            acc.union_with(&below[a]);
            acc.insert(a);
        }
        below[b] = acc;
    }
    let mut covers = Vec::new();
    for (b, preds) in pred.iter().enumerate() {
        for &a in preds {
            let implied = preds.iter().any(|&c| c != a && below[c].contains(a));
            if !implied {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    Ok(covers)
}

/// Kahn's algorithm; on failure returns a directed cycle `[c0, ..., c0]`.
pub(crate) fn topological_order(succ: &[Vec<usize>]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let m = succ.len();
    let mut indeg = vec![0usize; m];
    for s in succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..m).rev().filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(a) = stack.pop() {
        order.push(a);
        for &b in succ[a].iter().rev() {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    if order.len() == m {
        return Ok(order);
    }
    // Every unprocessed node has an unprocessed predecessor; walk backwards
    // until a node repeats.
    let mut done = vec![false; m];
    for &a in &order {
        done[a] = true;
    }
    let mut pred_left: Vec<Option<usize>> = vec![None; m];
    for (a, s) in succ.iter().enumerate() {
        if done[a] {
            continue;
        }
        for &b in s {
            if !done[b] && pred_left[b].is_none() {
                pred_left[b] = Some(a);
            }
        }
    }
    let start = (0..m).find(|&i| !done[i]).expect("cycle exists");
    let mut pos = HashMap::new();
    let mut walk = vec![start];
    let mut cur = start;
    loop {
        pos.insert(cur, walk.len() - 1);
        cur = pred_left[cur].expect("unprocessed node has an unprocessed predecessor");
        if let Some(&p) = pos.get(&cur) {
            let mut cycle: Vec<usize> = walk[p..].to_vec();
            cycle.push(cur);
            cycle.reverse();
            return Err(cycle);
        }
        walk.push(cur);
    }
}

#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// `below[b]` holds every `a < b`.
    below: Vec<FixedBitSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub ranked: bool,
    pub unique_min: bool,
    pub unique_max: bool,
    /// Rank of each element (by index), present only when `ranked`.
    pub rank: Option<Vec<usize>>,
}

impl<T: Clone + Eq + Hash> FinitePoset<T> {
    fn from_reduced_covers(elements: Vec<T>, index: HashMap<T, usize>, covers: Vec<(usize, usize)>) -> Self {
        let m = elements.len();
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        for &(a, b) in &covers {
            up[a].push(b);
            down[b].push(a);
        }
        let succ: Vec<Vec<usize>> = up.clone();
        let order = topological_order(&succ).expect("covers are acyclic");
        let mut below = vec![FixedBitSet::with_capacity(m); m];
        for &b in &order {
            let mut acc = FixedBitSet::with_capacity(m);
            for &a in &down[b] {
                acc.union_with(&below[a]);
                acc.insert(a);
            }
            below[b] = acc;
        }
        FinitePoset {
            elements,
            index,
            covers,
            up,
            down,
            below,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Cover pairs as element indices.
    pub fn cover_indices(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn covers(&self) -> Vec<(T, T)> {
        self.covers
            .iter()
            .map(|&(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// Strict order on indices.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    pub fn less_than(&self, a: &T, b: &T) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.lt(a, b),
            _ => false,
        }
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn is_order_ideal(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|b| self.down[b].iter().all(|&a| set.contains(a)))
    }

    /// Whether `order` (a sequence of indices) is a linear extension.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut pos = vec![usize::MAX; self.len()];
        for (p, &e) in order.iter().enumerate() {
            if e >= self.len() || pos[e] != usize::MAX {
                return false;
            }
            pos[e] = p;
        }
        self.covers.iter().all(|&(a, b)| pos[a] < pos[b])
    }

    /// Linear extensions as index sequences, in a fixed order: at every step
    /// the available minimal elements are tried by increasing index.
    pub fn linear_extensions(&self) -> LinearExtensions<'_, T, Unconstrained> {
        LinearExtensions::new(self, Unconstrained)
    }

    pub fn linear_extensions_with<C: ExtensionConstraint>(&self, constraint: C) -> LinearExtensions<'_, T, C> {
        LinearExtensions::new(self, constraint)
    }

    /// Number of linear extensions, by dynamic programming over order ideals.
    pub fn count_linear_extensions(&self) -> u128 {
        self.count_linear_extensions_capped(usize::MAX)
            .expect("uncapped count")
    }

    /// As [`count_linear_extensions`](Self::count_linear_extensions), giving up
    /// once more than `max_states` order ideals have been memoized.
    pub fn count_linear_extensions_capped(&self, max_states: usize) -> Option<u128> {
        let m = self.len();
        let mut memo: HashMap<FixedBitSet, u128> = HashMap::new();
        let mut missing: Vec<usize> = (0..m).map(|i| self.down[i].len()).collect();
        let mut placed = FixedBitSet::with_capacity(m);
        self.count_from(&mut placed, &mut missing, &mut memo, max_states)
    }

    fn count_from(
        &self,
        placed: &mut FixedBitSet,
        missing: &mut [usize],
        memo: &mut HashMap<FixedBitSet, u128>,
        cap: usize,
    ) -> Option<u128> {
        if placed.count_ones(..) == self.len() {
            return Some(1);
        }
        if let Some(&c) = memo.get(placed) {
            return Some(c);
        }
        if memo.len() >= cap {
            return None;
        }
        let mut total = 0u128;
        for x in 0..self.len() {
            if placed.contains(x) || missing[x] != 0 {
                continue;
            }
            placed.insert(x);
            for &u in &self.up[x] {
                missing[u] -= 1;
            }
            let sub = self.count_from(placed, missing, memo, cap);
            for &u in &self.up[x] {
                missing[u] += 1;
            }
            placed.set(x, false);
            total += sub?;
        }
        memo.insert(placed.clone(), total);
        Some(total)
    }

    /// Down-closed subsets, each exactly once, starting with the empty set.
    pub fn order_ideals(&self) -> OrderIdeals<'_, T> {
        OrderIdeals::new(self)
    }

    /// Maximal chains as index sequences from a minimal to a maximal element.
    pub fn maximal_chains(&self) -> MaximalChains<'_, T> {
        MaximalChains::new(self)
    }

    pub fn ranked_check(&self) -> RankReport {
        let m = self.len();
        let unique_min = self.minimal().len() == 1;
        let unique_max = self.maximal().len() == 1;
        let order = topological_order(&self.up).expect("poset is acyclic");
        let mut rank = vec![0usize; m];
        for &b in &order {
            rank[b] = self.down[b].iter().map(|&a| rank[a] + 1).max().unwrap_or(0);
        }
        let ranked = self.covers.iter().all(|&(a, b)| rank[b] == rank[a] + 1);
        RankReport {
            ranked,
            unique_min,
            unique_max,
            rank: ranked.then_some(rank),
        }
    }

    /// Hasse diagram as a digraph (arcs point from lower to upper covers).
    pub fn hasse(&self) -> Digraph<T>
    where
        T: Ord + Debug,
    {
        let mut g = Digraph::new();
        for e in &self.elements {
            g.add_node(e.clone());
        }
        for &(a, b) in &self.covers {
            g.add_arc(&self.elements[a], &self.elements[b], ())
                .expect("nodes were added");
        }
        g
    }

    /// Relabels the poset through `f`; `f` must be injective.
    pub fn map<U: Clone + Eq + Hash>(&self, mut f: impl FnMut(&T) -> U) -> FinitePoset<U> {
        let elements: Vec<U> = self.elements.iter().map(&mut f).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        FinitePoset {
            elements,
            index,
            covers: self.covers.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            below: self.below.clone(),
        }
    }

    pub fn to_dot(&self, name: &str, label: impl Fn(&T) -> String) -> String {
        let mut s = format!("digraph {name} {{\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", label(e)));
        }
        for &(a, b) in &self.covers {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        T: Serialize,
    {
        serde_json::json!({
            "elements": self.elements,
            "covers": self.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }
}

/// Checks whether `hint` is an isomorphism `p → q`: a bijection on elements
/// that maps covers onto covers.
pub fn poset_isomorphic_with<T, U>(p: &FinitePoset<T>, q: &FinitePoset<U>, hint: impl Fn(&T) -> U) -> Result<bool>
where
    T: Clone + Eq + Hash + Debug,
    U: Clone + Eq + Hash + Debug,
{
    if p.len() != q.len() {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; p.len()];
    let mut hit = vec![false; q.len()];
    for (i, e) in p.elements.iter().enumerate() {
        let u = hint(e);
        let j = q
            .index_of(&u)
            .ok_or_else(|| Error::BadHint(format!("{e:?} maps outside the target ({u:?})")))?;
        if hit[j] {
            return Err(Error::BadHint(format!("{u:?} is hit twice")));
        }
        hit[j] = true;
        image[i] = j;
    }
    if p.covers.len() != q.covers.len() {
        return Ok(false);
    }
    let target: HashSet<(usize, usize)> = q.covers.iter().copied().collect();
    Ok(p
        .covers
        .iter()
        .all(|&(a, b)| target.contains(&(image[a], image[b]))))
}

/// Hint-free isomorphism test on Hasse diagrams, limited to
/// [`HINT_FREE_LIMIT`] elements.
pub fn poset_isomorphic<T, U>(p: &FinitePoset<T>, q: &FinitePoset<U>) -> Result<bool>
where
    T: Clone + Eq + Hash + Ord + Debug,
    U: Clone + Eq + Hash + Ord + Debug,
{
    let size = p.len().max(q.len());
    if size > HINT_FREE_LIMIT {
        return Err(Error::TooLarge(size, HINT_FREE_LIMIT));
    }
    Ok(p.hasse().is_isomorphic_to(&q.hasse()))
}

/// Extra pruning applied while building linear extensions. `allows` is asked
/// before an element is appended; `push`/`pop` keep the state in sync.
pub trait ExtensionConstraint {
    fn allows(&self, x: usize) -> bool;
    fn push(&mut self, x: usize);
    fn pop(&mut self, x: usize);
}

pub struct Unconstrained;

impl ExtensionConstraint for Unconstrained {
    fn allows(&self, _: usize) -> bool {
        true
    }
    fn push(&mut self, _: usize) {}
    fn pop(&mut self, _: usize) {}
}

pub struct LinearExtensions<'a, T, C> {
    poset: &'a FinitePoset<T>,
    constraint: C,
    missing: Vec<usize>,
    used: Vec<bool>,
    placed: Vec<usize>,
    cursor: Vec<usize>,
    done: bool,
}

impl<'a, T, C: ExtensionConstraint> LinearExtensions<'a, T, C> {
    fn new(poset: &'a FinitePoset<T>, constraint: C) -> Self {
        let m = poset.elements.len();
        LinearExtensions {
            poset,
            constraint,
            missing: (0..m).map(|i| poset.down[i].len()).collect(),
            used: vec![false; m],
            placed: Vec::with_capacity(m),
            cursor: vec![0; m + 1],
            done: false,
        }
    }

    fn push(&mut self, x: usize) {
        self.used[x] = true;
        for &u in &self.poset.up[x] {
            self.missing[u] -= 1;
        }
        self.constraint.push(x);
        self.placed.push(x);
        let d = self.placed.len();
        self.cursor[d] = 0;
    }

    /// Returns false when there is nothing left to pop.
    fn pop(&mut self) -> bool {
        let Some(x) = self.placed.pop() else {
            return false;
        };
        self.used[x] = false;
        for &u in &self.poset.up[x] {
            self.missing[u] += 1;
        }
        self.constraint.pop(x);
        true
    }
}

impl<T, C: ExtensionConstraint> Iterator for LinearExtensions<'_, T, C> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let m = self.used.len();
        while !self.done {
            let d = self.placed.len();
            if d == m {
                let out = self.placed.clone();
                if !self.pop() {
                    self.done = true;
                }
                return Some(out);
            }
            let start = self.cursor[d];
            let next = (start..m).find(|&c| !self.used[c] && self.missing[c] == 0 && self.constraint.allows(c));
            match next {
                Some(c) => {
                    self.cursor[d] = c + 1;
                    self.push(c);
                }
                None => {
                    if !self.pop() {
                        self.done = true;
                    }
                }
            }
        }
        None
    }
}

pub struct OrderIdeals<'a, T> {
    poset: &'a FinitePoset<T>,
    /// Elements in a linear-extension order, so lower covers come first.
    order: Vec<usize>,
    stack: Vec<(usize, FixedBitSet)>,
}

impl<'a, T> OrderIdeals<'a, T> {
    fn new(poset: &'a FinitePoset<T>) -> Self {
        let order = topological_order(&poset.up).expect("poset is acyclic");
        let m = poset.elements.len();
        OrderIdeals {
            poset,
            order,
            stack: vec![(0, FixedBitSet::with_capacity(m))],
        }
    }
}

impl<T> Iterator for OrderIdeals<'_, T> {
    type Item = FixedBitSet;

    fn next(&mut self) -> Option<FixedBitSet> {
        while let Some((i, set)) = self.stack.pop() {
            if i == self.order.len() {
                return Some(set);
            }
            let e = self.order[i];
            if self.poset.down[e].iter().all(|&a| set.contains(a)) {
                let mut with = set.clone();
                with.insert(e);
                self.stack.push((i + 1, with));
            }
            self.stack.push((i + 1, set));
        }
        None
    }
}

pub struct MaximalChains<'a, T> {
    poset: &'a FinitePoset<T>,
    path: Vec<usize>,
    /// Next branch to explore at each depth (index into the cover list).
    branch: Vec<usize>,
    roots: Vec<usize>,
    next_root: usize,
}

impl<'a, T> MaximalChains<'a, T> {
    fn new(poset: &'a FinitePoset<T>) -> Self {
        let roots = (0..poset.elements.len())
            .filter(|&i| poset.down[i].is_empty())
            .collect();
        MaximalChains {
            poset,
            path: Vec::new(),
            branch: Vec::new(),
            roots,
            next_root: 0,
        }
    }
}

impl<T> Iterator for MaximalChains<'_, T> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            if self.path.is_empty() {
                let &root = self.roots.get(self.next_root)?;
                self.next_root += 1;
                self.path.push(root);
                self.branch.push(0);
            }
            let top = *self.path.last().unwrap();
            let ups = &self.poset.up[top];
            if ups.is_empty() {
                let out = self.path.clone();
                self.path.pop();
                self.branch.pop();
                return Some(out);
            }
            let b = self.branch.last_mut().unwrap();
            if *b < ups.len() {
                let nxt = ups[*b];
                *b += 1;
                self.path.push(nxt);
                self.branch.push(0);
            } else {
                self.path.pop();
                self.branch.pop();
            }
        }
    }
}

/// Convenience: the elements of an ideal as labels.
pub fn ideal_labels<T: Clone + Eq + Hash>(p: &FinitePoset<T>, set: &FixedBitSet) -> Vec<T> {
    set.ones().map(|i| p.elements[i].clone()).collect()
}

/// Display helper for label sequences.
pub fn join_labels<T: Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(sep)
}
