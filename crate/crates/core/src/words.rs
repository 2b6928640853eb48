//! Reduced words, commutation classes and the directed braid graph `G(w)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::perm::AffinePermutation;

/// A word in the simple transpositions; letters are residues `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= n) {
            return Err(Error::Parse {
                what: "word",
                input: format!("{letters:?}"),
                reason: format!("letter {bad} is not a residue modulo {n}"),
            });
        }
        Ok(Word { n, letters })
    }

    /// Parses a digit string (`n <= 10`) or a comma-separated list. The
    /// letter `n` is read as `0`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            what: "word",
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        let raw: Vec<usize> = if t.contains(',') {
            t.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|e| err(e.to_string())))
                .collect::<Result<_>>()?
        } else {
            if n > 10 && !t.is_empty() {
                return Err(err("ranks above 10 need comma-separated letters".into()));
            }
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| err(format!("unexpected character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        let letters = raw
            .into_iter()
            .map(|l| if l == n { Ok(0) } else if l < n { Ok(l) } else { Err(err(format!("letter {l} exceeds rank {n}"))) })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `s_{i_1} ⋯ s_{i_ℓ}`.
    pub fn apply(&self) -> AffinePermutation {
        self.letters
            .iter()
            .fold(AffinePermutation::identity(self.n), |w, &i| w.mul_simple(i))
    }

    pub fn is_reduced(&self) -> bool {
        self.apply().length() == self.len()
    }

    /// Words reachable by one directed braid `i(i+1)i → (i+1)i(i+1)`.
    pub fn braid_moves(&self) -> Vec<(usize, Word)> {
        let n = self.n;
        if n < 3 {
            return Vec::new();
        }
        let l = &self.letters;
        let mut out = Vec::new();
        for p in 0..l.len().saturating_sub(2) {
            let (a, b, c) = (l[p], l[p + 1], l[p + 2]);
            if a == c && b == (a + 1) % n {
                let mut next = l.clone();
                next[p] = b;
                next[p + 1] = a;
                next[p + 2] = b;
                out.push((p, Word { n, letters: next }));
            }
        }
        out
    }

    /// Words reachable by one commutation of adjacent letters.
    pub fn commutation_moves(&self) -> Vec<Word> {
        let l = &self.letters;
        (0..l.len().saturating_sub(1))
            .filter(|&p| letters_commute(self.n, l[p], l[p + 1]))
            .map(|p| {
                let mut next = l.clone();
                next.swap(p, p + 1);
                Word {
                    n: self.n,
                    letters: next,
                }
            })
            .collect()
    }
}

/// `s_i s_j = s_j s_i` as a commutation relation: `j ≢ i, i±1 (mod n)`.
pub fn letters_commute(n: usize, i: usize, j: usize) -> bool {
    i != j && (i + 1) % n != j && (j + 1) % n != i
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 10 { "," } else { "" };
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All reduced words of `w`, sorted lexicographically.
pub fn reduced_words(w: &AffinePermutation) -> Vec<Word> {
    fn descend(v: &AffinePermutation, suffix: &mut Vec<usize>, out: &mut Vec<Word>) {
        if v.is_identity() {
            out.push(Word {
                n: v.n(),
                letters: suffix.iter().rev().copied().collect(),
            });
            return;
        }
        for i in v.right_descents() {
            suffix.push(i);
            descend(&v.mul_simple(i), suffix, out);
            suffix.pop();
        }
    }
    let mut out = Vec::new();
    descend(w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Commutation classes of a set of reduced words. Classes are sorted by
/// their least word and each class is sorted.
#[derive(Clone, Debug)]
pub struct WordClasses {
    pub words: Vec<Word>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl WordClasses {
    pub fn new(mut words: Vec<Word>) -> Self {
        words.sort();
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut class_of = vec![usize::MAX; words.len()];
        let mut classes = Vec::new();
        for start in 0..words.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for next in words[i].commutation_moves() {
                    let j = index[&next];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort();
            classes.push(members);
        }
        WordClasses {
            words,
            class_of,
            classes,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_words(&self, c: usize) -> Vec<&Word> {
        self.classes[c].iter().map(|&i| &self.words[i]).collect()
    }

    /// The lexicographically least word of class `c`.
    pub fn label(&self, c: usize) -> &Word {
        &self.words[self.classes[c][0]]
    }

    pub fn index_of(&self, word: &Word) -> Option<usize> {
        self.words.binary_search(word).ok()
    }
}

pub fn commutation_classes(w: &AffinePermutation) -> WordClasses {
    WordClasses::new(reduced_words(w))
}

/// `G(w)`: commutation classes joined by directed braid moves.
pub struct BraidGraph {
    pub classes: WordClasses,
    /// Nodes are class ids.
    pub graph: Digraph<usize>,
}

impl BraidGraph {
    pub fn new(w: &AffinePermutation) -> Self {
        let classes = commutation_classes(w);
        let mut graph = Digraph::new();
        for c in 0..classes.len() {
            graph.add_node(c);
        }
        for (i, word) in classes.words.iter().enumerate() {
            for (_, next) in word.braid_moves() {
                let j = classes
                    .index_of(&next)
                    .expect("braid moves preserve the element");
                graph
                    .add_arc(&classes.class_of[i], &classes.class_of[j], ())
                    .expect("class nodes exist");
            }
        }
        BraidGraph { classes, graph }
    }

    /// Arcs as pairs of least words.
    pub fn labelled_arcs(&self) -> Vec<(Word, Word)> {
        self.graph
            .arcs()
            .into_iter()
            .map(|(a, b, ())| (self.classes.label(a).clone(), self.classes.label(b).clone()))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        self.graph
            .to_dot("G", true, |&c| self.classes.label(c).to_string(), |_| String::new())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<Vec<String>> = (0..self.classes.len())
            .map(|c| self.classes.class_words(c).iter().map(|w| w.to_string()).collect())
            .collect();
        let arcs: Vec<[usize; 2]> = self.graph.arcs().into_iter().map(|(a, b, ())| [a, b]).collect();
        serde_json::json!({ "classes": classes, "arcs": arcs })
    }
}

/// The undirected graph `R(w)` on reduced words, edges from commutations
/// and braids, as DOT.
pub fn word_graph_dot(w: &AffinePermutation) -> String {
    let words = reduced_words(w);
    let mut edges = BTreeMap::new();
    for u in &words {
        let moves = u
            .commutation_moves()
            .into_iter()
            .chain(u.braid_moves().into_iter().map(|(_, v)| v));
        for v in moves {
            let key = if u < &v { (u.clone(), v) } else { (v, u.clone()) };
            edges.insert(key, ());
        }
    }
    let mut g: Digraph<Word> = Digraph::new();
    for u in &words {
        g.add_node(u.clone());
    }
    for (a, b) in edges.keys() {
        g.add_arc(a, b, ()).expect("words exist");
    }
    g.to_dot("R", false, |u| u.to_string(), |_| String::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    #[test]
    fn words_and_products() {
        let u = Word::parse(4, "0121032").unwrap();
        assert_eq!(u.apply(), perm("(1,7,2,0)"));
        assert!(u.is_reduced());
        assert_eq!(Word::parse(4, "4121432").unwrap(), u);
        let z = Word::parse(4, "00").unwrap();
        assert!(z.apply().is_identity());
        assert!(!z.is_reduced());
        let v = Word::parse(4, "232124134").unwrap();
        assert_eq!(v.apply(), perm("(-3,-2,8,7)"));
        assert!(v.is_reduced());
        assert_eq!(Word::parse(12, "1,11,12").unwrap().letters(), &[1, 11, 0]);
        assert!(Word::parse(12, "111").is_err());
        assert!(Word::parse(4, "5").is_err());
    }

    #[test]
    fn affine_example_words() {
        let w = perm("(1,7,2,0)");
        let words = reduced_words(&w);
        assert_eq!(words.len(), 10);
        for u in &words {
            assert!(u.is_reduced());
            assert_eq!(u.apply(), w);
        }
        let classes = commutation_classes(&w);
        let mut sizes: Vec<usize> = classes.classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 4]);
    }

    #[test]
    fn identity_has_the_empty_word() {
        let words = reduced_words(&AffinePermutation::identity(3));
        assert_eq!(words.len(), 1);
        assert!(words[0].is_empty());
    }

    #[test]
    fn longest_element_of_s3() {
        let g = BraidGraph::new(&perm("(3,2,1)"));
        assert_eq!(g.classes.len(), 2);
        let arcs: Vec<(String, String)> = g
            .labelled_arcs()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(arcs, vec![("121".to_string(), "212".to_string())]);
    }

    #[test]
    fn rank_two_has_no_relations() {
        let w = AffinePermutation::simple(2, 0).mul_simple(1).mul_simple(0);
        assert_eq!(reduced_words(&w).len(), 1);
        let g = BraidGraph::new(&w);
        assert_eq!(g.graph.arc_count(), 0);
        assert_eq!(g.graph.undirected_diameter().unwrap(), 0);
    }
}
