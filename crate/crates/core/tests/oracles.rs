//! Library results against brute-force definitions and known counts.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use higher_bruhat::admissible::enumerate_admissible;
use higher_bruhat::consistent::enumerate_consistent;
use higher_bruhat::kclass::{inv_k, KClass};
use higher_bruhat::words::commutation_classes;
use higher_bruhat::{reduced_words, AffinePermutation, HigherBruhat, Level};

fn perm(s: &str) -> AffinePermutation {
    s.parse().unwrap()
}

/// Elements used across the oracles: all of `S_4` and short affine elements.
fn family() -> Vec<AffinePermutation> {
    let mut v = AffinePermutation::finite_group(4);
    v.extend(AffinePermutation::enumerate_up_to_length(3, 6));
    v.extend(AffinePermutation::enumerate_up_to_length(4, 5));
    v.push(perm("(6,4,5,2,3,1)"));
    v.push(perm("(-3,-2,8,7)"));
    v
}

fn inverted(w: &AffinePermutation, x: i64, y: i64) -> bool {
    x < y && w.apply_inverse(x) > w.apply_inverse(y)
}

/// `k`-inversions straight from the definition: increasing tuples with the
/// first entry in `[1,n]`, distinct residues and every pair inverted. Pairs
/// further apart than twice the largest displacement of `w^{-1}` are never
/// inverted, which bounds the search.
fn brute_inv_k(w: &AffinePermutation, k: usize) -> BTreeSet<Vec<i64>> {
    let n = w.n() as i64;
    let disp = (1..=n).map(|i| (w.apply_inverse(i) - i).abs()).max().unwrap();
    let span = 2 * disp + 1;
    let mut out = BTreeSet::new();
    fn grow(w: &AffinePermutation, k: usize, n: i64, hi: i64, t: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if t.len() == k {
            out.insert(t.clone());
            return;
        }
        let last = *t.last().unwrap();
        for y in last + 1..=hi {
            if t.iter().any(|&x| (x - y).rem_euclid(n) == 0 || !inverted(w, x, y)) {
                continue;
            }
            t.push(y);
            grow(w, k, n, hi, t, out);
            t.pop();
        }
    }
    for x in 1..=n {
        let hi = if w.is_finite() { n } else { x + span };
        grow(w, k, n, hi, &mut vec![x], &mut out);
    }
    // Canonical form: the minimum lies in [1,n], which holds already.
    out
}

#[test]
fn k_inversions_match_the_definition() {
    for w in family() {
        for k in 2..=w.n() {
            let got: BTreeSet<Vec<i64>> = inv_k(&w, k).unwrap().iter().map(|x| x.elements().to_vec()).collect();
            assert_eq!(got, brute_inv_k(&w, k), "w={w} k={k}");
        }
        assert_eq!(brute_inv_k(&w, 2).len(), w.length(), "w={w}");
    }
}

fn count_words(w: &AffinePermutation, memo: &mut HashMap<AffinePermutation, u64>) -> u64 {
    if w.is_identity() {
        return 1;
    }
    if let Some(&c) = memo.get(w) {
        return c;
    }
    let c = w.right_descents().into_iter().map(|i| count_words(&w.mul_simple(i), memo)).sum();
    memo.insert(w.clone(), c);
    c
}

#[test]
fn reduced_words_match_descent_recursion_and_weak_chains() {
    let mut memo = HashMap::new();
    for w in family() {
        let words = reduced_words(&w);
        assert_eq!(words.len() as u64, count_words(&w, &mut memo), "w={w}");
        assert_eq!(words.len(), w.weak_interval().maximal_chains().count(), "w={w}");
        assert!(words.iter().all(|u| u.apply() == w && u.len() == w.length()));
    }
}

#[test]
fn longest_elements_of_small_symmetric_groups() {
    // Known counts of reduced words and commutation classes.
    for (n, words, classes) in [(3, 2, 2), (4, 16, 8), (5, 768, 62)] {
        let w0 = AffinePermutation::longest_finite(n);
        assert_eq!(reduced_words(&w0).len(), words, "n={n}");
        assert_eq!(commutation_classes(&w0).len(), classes, "n={n}");
    }
}

#[test]
fn classical_higher_bruhat_sizes() {
    // |B(n,k)| for the longest element: B(n,n-1) has 2 elements, B(n,n-2)
    // has 2n, B(5,2) has 62.
    for (n, k, size) in [(3, 2, 2), (4, 3, 2), (5, 4, 2), (4, 2, 8), (5, 3, 10), (6, 4, 12), (5, 2, 62)] {
        let w0 = AffinePermutation::longest_finite(n);
        let b = HigherBruhat::new(Level::new(&w0, k).unwrap()).unwrap();
        assert_eq!(b.classes.classes().len(), size, "B({n},{k})");
    }
}

fn brute_linear_extensions(level: &Level) -> Vec<Vec<usize>> {
    let m = level.len();
    let p = level.poset();
    (0..m)
        .permutations(m)
        .filter(|o| {
            let mut pos = vec![0; m];
            for (i, &x) in o.iter().enumerate() {
                pos[x] = i;
            }
            (0..m).all(|a| (0..m).all(|b| !p.lt(a, b) || pos[a] < pos[b]))
        })
        .collect()
}

/// Packet members by index, straight from the class.
fn packet_indices(level: &Level, x: &KClass) -> Vec<usize> {
    x.packet()
        .members
        .iter()
        .map(|m| level.index_of(m).expect("packet of a (k+1)-inversion lies in Inv_k"))
        .collect()
}

#[test]
fn linear_extension_counts_and_admissible_orders_by_filtering() {
    let mut checked = 0;
    for w in family() {
        for k in 2..=w.n() {
            let level = Level::new(&w, k).unwrap();
            if level.len() > 7 {
                continue;
            }
            let all = brute_linear_extensions(&level);
            assert_eq!(level.poset().count_linear_extensions(), all.len() as u128, "w={w} k={k}");
            let packets: Vec<Vec<usize>> = level.upper().iter().map(|x| packet_indices(&level, x)).collect();
            let expected: BTreeSet<Vec<usize>> = all
                .into_iter()
                .filter(|o| {
                    let mut pos = vec![0; o.len()];
                    for (i, &x) in o.iter().enumerate() {
                        pos[x] = i;
                    }
                    packets.iter().all(|p| {
                        let ps: Vec<usize> = p.iter().map(|&m| pos[m]).collect();
                        ps.windows(2).all(|q| q[0] < q[1]) || ps.windows(2).all(|q| q[0] > q[1])
                    })
                })
                .collect();
            let got: BTreeSet<Vec<usize>> = enumerate_admissible(&level).collect();
            assert_eq!(got, expected, "w={w} k={k}");
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn consistent_sets_by_filtering_subsets() {
    for w in family() {
        for k in 2..=w.n() {
            let level = Level::new(&w, k).unwrap();
            let m = level.len();
            if m > 12 {
                continue;
            }
            let p = level.poset();
            let packets: Vec<Vec<usize>> = level.upper().iter().map(|x| packet_indices(&level, x)).collect();
            let mut expected = BTreeSet::new();
            for mask in 0u32..(1 << m) {
                let has = |i: usize| mask >> i & 1 == 1;
                let ideal = (0..m).all(|b| !has(b) || (0..m).all(|a| !p.lt(a, b) || has(a)));
                // Present members form a leading or trailing run of X_1..X_{k+1}.
                let msz = packets.iter().all(|pk| {
                    let bits: Vec<bool> = pk.iter().map(|&i| has(i)).collect();
                    let lead = bits.iter().take_while(|&&b| b).count();
                    let trail = bits.iter().rev().take_while(|&&b| b).count();
                    let total = bits.iter().filter(|&&b| b).count();
                    total == lead || total == trail
                });
                if ideal && msz {
                    expected.insert((0..m).filter(|&i| has(i)).collect::<Vec<_>>());
                }
            }
            let got: BTreeSet<Vec<usize>> = enumerate_consistent(&level, false)
                .iter()
                .map(|s| s.ones().collect())
                .collect();
            assert_eq!(got, expected, "w={w} k={k}");
        }
    }
}
