//! Rebuilds worked examples and diffs them against embedded golden data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::admissible::{order_indices, admissibility_violation, reversal_set, HigherBruhat, OrderClasses};
use crate::consistent::{build_gr, ArcTag, ConsistentPoset};
use crate::error::{Error, Result};
use crate::kclass::{parse_class, KClass};
use crate::perm::AffinePermutation;
use crate::permanent::Level;
use crate::words::{BraidGraph, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Artifact {
    BraidWords,
    PermanentPoset,
    ConsistentSets,
    GrArcs,
    ReversalSets,
    AdmissibleCount,
}

const ARTIFACTS: [(Artifact, &str, &str, &str); 6] = [
    (Artifact::BraidWords, "braid-words", "fig1", include_str!("../data/braid_words.txt")),
    (Artifact::PermanentPoset, "permanent-poset", "fig2", include_str!("../data/permanent_poset.txt")),
    (Artifact::ConsistentSets, "consistent-sets", "fig3", include_str!("../data/consistent_sets.txt")),
    (Artifact::GrArcs, "gr-arcs", "fig4", include_str!("../data/gr_arcs.txt")),
    (Artifact::ReversalSets, "reversal-sets", "table1", include_str!("../data/reversal_sets.txt")),
    (Artifact::AdmissibleCount, "admissible-count", "count1228", include_str!("../data/admissible_count.txt")),
];

impl Artifact {
    pub fn all() -> impl Iterator<Item = Artifact> {
        ARTIFACTS.iter().map(|a| a.0)
    }

    fn entry(self) -> &'static (Artifact, &'static str, &'static str, &'static str) {
        ARTIFACTS.iter().find(|a| a.0 == self).unwrap()
    }

    pub fn name(self) -> &'static str {
        self.entry().1
    }

    pub fn alias(self) -> &'static str {
        self.entry().2
    }

    /// The embedded golden file.
    pub fn golden(self) -> &'static str {
        self.entry().3
    }
}

impl fmt::Display for Artifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Artifact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ARTIFACTS
            .iter()
            .find(|a| a.1 == s || a.2 == s)
            .map(|a| a.0)
            .ok_or_else(|| Error::Parse {
                what: "artifact",
                input: s.to_string(),
                reason: format!(
                    "expected one of {}",
                    ARTIFACTS.iter().map(|a| a.1).collect::<Vec<_>>().join(", ")
                ),
            })
    }
}

/// One compared quantity. `missing` and `extra` hold the structural diff for
/// set-valued comparisons.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub what: String,
    pub pass: bool,
    pub expected: String,
    pub got: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reproduction {
    pub artifact: Artifact,
    pub comparisons: Vec<Comparison>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.pass)
    }

    fn scalar(&mut self, what: &str, expected: impl ToString, got: impl ToString) {
        let (expected, got) = (expected.to_string(), got.to_string());
        self.comparisons.push(Comparison {
            what: what.into(),
            pass: expected == got,
            expected,
            got,
            missing: vec![],
            extra: vec![],
        });
    }

    fn sets<T: Ord + fmt::Display>(&mut self, what: &str, expected: &BTreeSet<T>, got: &BTreeSet<T>) {
        let show = |s: &mut dyn Iterator<Item = &T>| s.map(|x| x.to_string()).collect::<Vec<_>>();
        self.comparisons.push(Comparison {
            what: what.into(),
            pass: expected == got,
            expected: format!("{} items", expected.len()),
            got: format!("{} items", got.len()),
            missing: show(&mut expected.difference(got)),
            extra: show(&mut got.difference(expected)),
        });
    }
}

impl fmt::Display for Reproduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comparisons {
            let mark = if c.pass { "ok  " } else { "DIFF" };
            writeln!(f, "{mark} {}: expected {}, got {}", c.what, c.expected, c.got)?;
            for m in &c.missing {
                writeln!(f, "       - {m}")?;
            }
            for x in &c.extra {
                writeln!(f, "       + {x}")?;
            }
        }
        Ok(())
    }
}

/// Whitespace-separated `key value...` lines; `#` starts a comment.
struct Golden {
    lines: Vec<(String, Vec<String>)>,
}

impl Golden {
    fn parse(text: &str) -> Self {
        let lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                let mut parts = l.split_whitespace().map(String::from);
                let key = parts.next().unwrap();
                (key, parts.collect())
            })
            .collect();
        Golden { lines }
    }

    fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a [String]> + 'a {
        self.lines.iter().filter(move |l| l.0 == key).map(|l| l.1.as_slice())
    }

    fn one(&self, key: &str) -> Result<&[String]> {
        self.lines.iter().find(|l| l.0 == key).map(|l| l.1.as_slice()).ok_or_else(|| Error::Parse {
            what: "golden data",
            input: key.to_string(),
            reason: "missing key".into(),
        })
    }

    fn perm(&self) -> Result<AffinePermutation> {
        self.one("w")?[0].parse()
    }

    fn usize(&self, key: &str) -> Result<usize> {
        self.one(key)?[0].parse().map_err(|e: std::num::ParseIntError| Error::Parse {
            what: "golden data",
            input: key.to_string(),
            reason: e.to_string(),
        })
    }
}

/// A set of classes written `a,b,c` with `-` for the empty set.
fn class_set(s: &str, n: usize) -> Result<BTreeSet<KClass>> {
    if s == "-" {
        return Ok(BTreeSet::new());
    }
    s.split(',').map(|t| parse_class(t, n)).collect()
}

fn set_label(s: &BTreeSet<KClass>) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn reproduce(artifact: Artifact) -> Result<Reproduction> {
    let golden = Golden::parse(artifact.golden());
    let mut rep = Reproduction {
        artifact,
        comparisons: Vec::new(),
    };
    match artifact {
        Artifact::BraidWords => braid_words(&golden, &mut rep)?,
        Artifact::PermanentPoset => permanent_poset(&golden, &mut rep)?,
        Artifact::ConsistentSets => consistent_sets(&golden, &mut rep)?,
        Artifact::GrArcs => gr_arcs(&golden, &mut rep)?,
        Artifact::ReversalSets => reversal_sets(&golden, &mut rep)?,
        Artifact::AdmissibleCount => admissible_count(&golden, &mut rep)?,
    }
    Ok(rep)
}

fn braid_words(g: &Golden, rep: &mut Reproduction) -> Result<()> {
    let w = g.perm()?;
    let n = w.n();
    let braid = BraidGraph::new(&w);
    rep.scalar("reduced words", g.usize("words")?, braid.classes.words.len());

    let expected: BTreeSet<String> = g
        .all("class")
        .map(|ws| {
            let mut v: Vec<Word> = ws.iter().map(|s| Word::parse(n, s)).collect::<Result<_>>()?;
            v.sort();
            Ok(v.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(" "))
        })
        .collect::<Result<_>>()?;
    let got: BTreeSet<String> = (0..braid.classes.len())
        .map(|c| {
            braid
                .classes
                .class_words(c)
                .iter()
                .map(|u| u.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    rep.sets("commutation classes", &expected, &got);
    let mut sizes: Vec<usize> = braid.classes.classes.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    let mut expected_sizes: Vec<usize> = g.all("class").map(|ws| ws.len()).collect();
    expected_sizes.sort_unstable();
    rep.scalar("class sizes", format!("{expected_sizes:?}"), format!("{sizes:?}"));

    // Arcs are compared through least class representatives.
    let label = |s: &str| -> Result<String> {
        let u = Word::parse(n, s)?;
        let i = braid
            .classes
            .index_of(&u)
            .ok_or_else(|| Error::UnknownLabel(u.to_string()))?;
        Ok(braid.classes.label(braid.classes.class_of[i]).to_string())
    };
    let expected: BTreeSet<String> = g
        .all("arc")
        .map(|a| Ok(format!("{} -> {}", label(&a[0])?, label(&a[1])?)))
        .collect::<Result<_>>()?;
    let got: BTreeSet<String> = braid
        .labelled_arcs()
        .into_iter()
        .map(|(a, b)| format!("{a} -> {b}"))
        .collect();
    rep.sets("directed braid arcs", &expected, &got);
    Ok(())
}

fn poset_part(g: &Golden, rep: &mut Reproduction, level: &Level) -> Result<()> {
    let n = level.permutation().n();
    let expected: BTreeSet<KClass> = g.one("elements")?.iter().map(|s| parse_class(s, n)).collect::<Result<_>>()?;
    let got: BTreeSet<KClass> = level.inversions().iter().cloned().collect();
    rep.sets(&format!("{}-inversions", level.k()), &expected, &got);
    let expected: BTreeSet<String> = g
        .all("cover")
        .map(|c| Ok(format!("{} < {}", parse_class(&c[0], n)?, parse_class(&c[1], n)?)))
        .collect::<Result<_>>()?;
    let got: BTreeSet<String> = level
        .poset()
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{a} < {b}"))
        .collect();
    rep.sets("permanent poset covers", &expected, &got);
    Ok(())
}

fn permanent_poset(g: &Golden, rep: &mut Reproduction) -> Result<()> {
    let w = g.perm()?;
    let level = Level::new(&w, g.usize("k")?)?;
    poset_part(g, rep, &level)
}

fn consistent_sets(g: &Golden, rep: &mut Reproduction) -> Result<()> {
    let w = g.perm()?;
    let n = w.n();
    let k = g.usize("k")?;
    let level = Level::new(&w, k)?;
    poset_part(g, rep, &level)?;

    let consistent = ConsistentPoset::new(level)?;
    let as_set = |id: usize| -> BTreeSet<KClass> { consistent.labels(id).into_iter().collect() };
    let expected: BTreeSet<String> = g
        .all("set")
        .map(|s| Ok(set_label(&class_set(&s[0], n)?)))
        .collect::<Result<_>>()?;
    let got: BTreeSet<String> = (0..consistent.sets().len()).map(|i| set_label(&as_set(i))).collect();
    rep.sets("consistent sets", &expected, &got);

    let cover_set = |key: &str| -> Result<BTreeSet<String>> {
        g.all(key)
            .map(|c| {
                Ok(format!(
                    "{} < {}",
                    set_label(&class_set(&c[0], n)?),
                    set_label(&class_set(&c[1], n)?)
                ))
            })
            .collect()
    };
    let got: BTreeSet<String> = consistent
        .poset
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{} < {}", set_label(&as_set(a)), set_label(&as_set(b))))
        .collect();
    rep.sets("consistent-set covers", &cover_set("set-cover")?, &got);

    let bruhat = HigherBruhat::new(Level::new(&w, k - 1)?)?;
    let rev = |c: usize| -> BTreeSet<KClass> { bruhat.reversal_labels(c).into_iter().collect() };
    let got: BTreeSet<String> = bruhat
        .poset
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{} < {}", set_label(&rev(a)), set_label(&rev(b))))
        .collect();
    rep.sets("higher Bruhat covers by reversal set", &cover_set("class-cover")?, &got);
    Ok(())
}

fn gr_arcs(g: &Golden, rep: &mut Reproduction) -> Result<()> {
    let w = g.perm()?;
    let n = w.n();
    let level = Level::new(&w, g.usize("k")?)?;
    let r: Vec<KClass> = class_set(&g.one("R")?[0], n)?.into_iter().collect();
    let bits = level.upper_set_of(&r)?;
    let gr = build_gr(&level, &bits);
    let tags = [
        ("quasi", ArcTag::Quasi),
        ("reversal", ArcTag::Reversal),
        ("complement", ArcTag::Complement),
        ("congruence", ArcTag::Congruence),
    ];
    let mut expected = BTreeSet::new();
    for (key, _) in &tags {
        for a in g.all(key) {
            expected.insert(format!("{} -> {} ({key})", parse_class(&a[0], n)?, parse_class(&a[1], n)?));
        }
    }
    let inv = level.inversions();
    let got: BTreeSet<String> = gr
        .arcs
        .iter()
        .map(|&(a, b, t)| {
            let key = tags.iter().find(|x| x.1 == t).unwrap().0;
            format!("{} -> {} ({key})", inv[a], inv[b])
        })
        .collect();
    rep.sets("tagged arcs of G_R", &expected, &got);
    rep.scalar("G_R acyclic", true, gr.is_acyclic());
    Ok(())
}

fn reversal_sets(g: &Golden, rep: &mut Reproduction) -> Result<()> {
    let w = g.perm()?;
    let n = w.n();
    let classes = OrderClasses::new(Level::new(&w, g.usize("k")?)?);
    let level = classes.level();
    let upper = level.upper();
    let mut seen_classes = BTreeMap::new();
    let mut expected_sets = BTreeSet::new();
    for (row, line) in g.all("order").enumerate() {
        let order: Vec<KClass> = line[0].split(',').map(|s| parse_class(s, n)).collect::<Result<_>>()?;
        let idx = order_indices(level, &order)?;
        let violation = admissibility_violation(level, &idx)?;
        rep.scalar(
            &format!("order {} admissible", row + 1),
            "none",
            violation.map_or("none".to_string(), |v| v.to_string()),
        );
        let expected = class_set(&line[1], n)?;
        let got: BTreeSet<KClass> = reversal_set(level, &idx).ones().map(|i| upper[i].clone()).collect();
        rep.scalar(&format!("order {} reversal set", row + 1), set_label(&expected), set_label(&got));
        expected_sets.insert(set_label(&expected));
        if let Some(id) = classes.order_id(&idx) {
            seen_classes.insert(classes.class_of(id), row);
        }
    }
    rep.scalar("distinct commutation classes", g.all("order").count(), seen_classes.len());
    let got: BTreeSet<String> = (0..classes.classes().len())
        .map(|c| {
            let s: BTreeSet<KClass> = classes.class_reversal(c).ones().map(|i| upper[i].clone()).collect();
            set_label(&s)
        })
        .collect();
    rep.sets("reversal sets of all classes", &expected_sets, &got);
    Ok(())
}

fn admissible_count(g: &Golden, rep: &mut Reproduction) -> Result<()> {
    let w = g.perm()?;
    let classes = OrderClasses::new(Level::new(&w, g.usize("k")?)?);
    rep.scalar("admissible orders", g.usize("orders")?, classes.orders().len());
    rep.scalar("commutation classes", g.usize("classes")?, classes.classes().len());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_aliases_parse() {
        for a in Artifact::all() {
            assert_eq!(a.name().parse::<Artifact>().unwrap(), a);
            assert_eq!(a.alias().parse::<Artifact>().unwrap(), a);
        }
    }

    #[test]
    fn small_artifacts_reproduce() {
        for a in [
            Artifact::BraidWords,
            Artifact::PermanentPoset,
            Artifact::ConsistentSets,
            Artifact::GrArcs,
        ] {
            let r = reproduce(a).unwrap();
            assert!(r.passed(), "{a}:\n{r}");
        }
    }

    #[test]
    fn diff_lists_missing_and_extra() {
        let mut rep = Reproduction {
            artifact: Artifact::GrArcs,
            comparisons: vec![],
        };
        let a: BTreeSet<i32> = [1, 2].into();
        let b: BTreeSet<i32> = [2, 3].into();
        rep.sets("x", &a, &b);
        assert!(!rep.passed());
        assert_eq!(rep.comparisons[0].missing, vec!["1"]);
        assert_eq!(rep.comparisons[0].extra, vec!["3"]);
        assert!(rep.to_string().contains("DIFF"));
    }
}
