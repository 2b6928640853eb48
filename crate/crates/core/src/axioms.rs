//! Closure-axiom descriptions of affine 2-inversion sets and of reflection
//! orders, stated directly on 2-classes so they can be compared with the
//! weak-order interval and with reduced words.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::admissible::reflection_order;
use crate::error::{Error, Result};
use crate::kclass::KClass;
use crate::perm::AffinePermutation;
use crate::words::reduced_words;

fn pair(n: usize, x: i64, y: i64) -> KClass {
    KClass::canonicalize(&[x, y], n).expect("entries are increasing with distinct residues")
}

fn distinct(n: usize, a: i64, b: i64) -> bool {
    (a - b).rem_euclid(n as i64) != 0
}

/// Whether a finite set of 2-classes satisfies the three closure conditions
/// characterizing inversion sets of affine permutations.
pub fn satisfies_inversion_set_axioms(n: usize, r: &HashSet<KClass>) -> bool {
    let ni = n as i64;
    for c in r {
        let (x, z) = (c.elements()[0], c.elements()[1]);
        // [x,z] ∈ R implies [x,y] ∈ R or [y,z] ∈ R.
        for y in x + 1..z {
            if distinct(n, y, x) && distinct(n, y, z) && !r.contains(&pair(n, x, y)) && !r.contains(&pair(n, y, z)) {
                return false;
            }
        }
        // [x,z] ∈ R implies [x, z - en] ∈ R while z - en > x.
        let mut y = z - ni;
        while y > x {
            if !r.contains(&pair(n, x, y)) {
                return false;
            }
            y -= ni;
        }
    }
    // [x,y], [y,z] ∈ R implies [x,z] ∈ R.
    for a in r {
        for b in r {
            let (x, y) = (a.elements()[0], a.elements()[1]);
            let (y2, z2) = (b.elements()[0], b.elements()[1]);
            if !distinct(n, y, y2) {
                let z = z2 + (y - y2);
                if distinct(n, x, z) && !r.contains(&pair(n, x, z)) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub candidates: usize,
    pub accepted: usize,
    pub expected: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares every subset of `inv2(w)` against the inversion sets of the
/// weak-order interval below `w`. Refuses more than 20 inversions.
pub fn inversion_set_axiom_check(w: &AffinePermutation) -> Result<AxiomReport> {
    let n = w.n();
    let inv: Vec<KClass> = w.inv2().into_iter().map(|p| KClass::from_pair(n, p)).collect();
    if inv.len() > 20 {
        return Err(Error::TooLarge(inv.len(), 20));
    }
    let below: HashSet<Vec<KClass>> = w
        .weak_interval()
        .elements()
        .iter()
        .map(|v| {
            let mut s: Vec<KClass> = v.inv2().into_iter().map(|p| KClass::from_pair(n, p)).collect();
            s.sort();
            s
        })
        .collect();
    let mut report = AxiomReport {
        expected: below.len(),
        ..Default::default()
    };
    for subset in inv.iter().cloned().powerset() {
        report.candidates += 1;
        let set: HashSet<KClass> = subset.iter().cloned().collect();
        let ok = satisfies_inversion_set_axioms(n, &set);
        let mut sorted = subset;
        sorted.sort();
        let truth = below.contains(&sorted);
        report.accepted += ok as usize;
        if ok != truth {
            report.failures.push(format!(
                "{{{}}}: axioms say {ok}, weak interval says {truth}",
                sorted.iter().join(",")
            ));
        }
    }
    Ok(report)
}

/// Whether a total order of `Inv_2(w)` restricts to a lex prefix or an
/// antilex suffix on every 3-class packet, and places `[x,y]` before
/// `[x,y+n]`.
pub fn satisfies_reflection_axioms(n: usize, order: &[KClass]) -> bool {
    let pos: HashMap<&KClass, usize> = order.iter().enumerate().map(|(p, x)| (x, p)).collect();
    let ni = n as i64;
    let mut triples: HashSet<KClass> = HashSet::new();
    for c in order {
        let (x, z) = (c.elements()[0], c.elements()[1]);
        for y in x + 1..z {
            if distinct(n, y, x) && distinct(n, y, z) {
                triples.insert(KClass::from_sorted(n, vec![x, y, z]));
            }
        }
        for d in order {
            let (y2, z2) = (d.elements()[0], d.elements()[1]);
            if !distinct(n, z, y2) {
                let t = z2 + (z - y2);
                if distinct(n, x, t) {
                    triples.insert(KClass::from_sorted(n, vec![x, z, t]));
                }
            }
        }
        let up = pair(n, x, z + ni);
        if let Some(&q) = pos.get(&up) {
            if q < pos[c] {
                return false;
            }
        }
    }
    for t in &triples {
        // Members X_1, X_2, X_3 and their positions when present.
        let p: Vec<Option<usize>> = t.packet().members.iter().map(|m| pos.get(m).copied()).collect();
        let present: Vec<usize> = (0..3).filter(|&i| p[i].is_some()).collect();
        let lex_prefix = [vec![], vec![2], vec![2, 1], vec![2, 1, 0]]
            .iter()
            .any(|s| *s == sorted_desc(&present) && increasing(s.iter().map(|&i| p[i].unwrap())));
        let antilex_suffix = [vec![], vec![0], vec![0, 1], vec![0, 1, 2]]
            .iter()
            .any(|s| *s == present && increasing(s.iter().map(|&i| p[i].unwrap())));
        if !lex_prefix && !antilex_suffix {
            return false;
        }
    }
    true
}

fn sorted_desc(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

fn increasing(it: impl Iterator<Item = usize>) -> bool {
    it.tuple_windows().all(|(a, b)| a < b)
}

/// Compares every total order of `Inv_2(w)` passing the reflection axioms
/// with the reflection orders of reduced words. Refuses more than 8
/// inversions.
pub fn reflection_axiom_check(w: &AffinePermutation) -> Result<AxiomReport> {
    let n = w.n();
    let inv: Vec<KClass> = w.inv2().into_iter().map(|p| KClass::from_pair(n, p)).collect();
    if inv.len() > 8 {
        return Err(Error::TooLarge(inv.len(), 8));
    }
    let from_words: HashSet<Vec<KClass>> = reduced_words(w)
        .iter()
        .map(reflection_order)
        .collect::<Result<_>>()?;
    let mut report = AxiomReport {
        expected: from_words.len(),
        ..Default::default()
    };
    let m = inv.len();
    for order in inv.iter().cloned().permutations(m) {
        report.candidates += 1;
        let ok = satisfies_reflection_axioms(n, &order);
        let truth = from_words.contains(&order);
        report.accepted += ok as usize;
        if ok != truth {
            report.failures.push(format!(
                "({}): axioms say {ok}, reduced words say {truth}",
                order.iter().join(",")
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    #[test]
    fn inversion_sets_of_small_elements() {
        for w in ["(3,2,1)", "(1,7,2,0)", "(-1,3,4)", "(0,4,2)"] {
            let r = inversion_set_axiom_check(&perm(w)).unwrap();
            assert!(r.passed(), "{w}: {:?}", r.failures);
            assert_eq!(r.accepted, r.expected);
        }
    }

    #[test]
    fn reflection_orders_of_small_elements() {
        for w in ["(3,2,1)", "(1,7,2,0)", "(-1,3,4)", "(0,4,2)", "(2,1,3)"] {
            let r = reflection_axiom_check(&perm(w)).unwrap();
            assert!(r.passed(), "{w}: {:?}", r.failures);
            assert_eq!(r.accepted, r.expected);
        }
    }

    #[test]
    fn axioms_reject_non_closed_sets() {
        let n = 3;
        let set: HashSet<KClass> = [pair(n, 1, 3)].into_iter().collect();
        assert!(!satisfies_inversion_set_axioms(n, &set));
        let set: HashSet<KClass> = [pair(n, 1, 5)].into_iter().collect();
        assert!(!satisfies_inversion_set_axioms(n, &set));
        assert!(satisfies_inversion_set_axioms(n, &HashSet::new()));
    }
}
