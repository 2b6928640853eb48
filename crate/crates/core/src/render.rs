//! Text, JSON and DOT renderings of the objects built by the library.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::admissible::{enumerate_admissible, reflection_order, reversal_set, HigherBruhat};
use crate::consistent::{build_gr, ConsistentPoset};
use crate::error::{Error, Result};
use crate::kclass::{parse_class, KClass};
use crate::perm::AffinePermutation;
use crate::permanent::Level;
use crate::words::{reduced_words, BraidGraph, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(Error::Parse {
                what: "format",
                input: s.into(),
                reason: "expected text, json or dot".into(),
            }),
        }
    }
}

/// Objects that `show` can render.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Inversions,
    PermanentPoset,
    BraidGraph,
    WordGraph,
    Bruhat,
    Consistent,
    Gr,
    ReflectionOrder,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "inversions" => Target::Inversions,
            "permanent-poset" => Target::PermanentPoset,
            "braid-graph" => Target::BraidGraph,
            "word-graph" => Target::WordGraph,
            "bruhat" => Target::Bruhat,
            "consistent" => Target::Consistent,
            "gr" => Target::Gr,
            "reflection-order" => Target::ReflectionOrder,
            _ => {
                return Err(Error::Parse {
                    what: "object",
                    input: s.into(),
                    reason: "expected inversions, permanent-poset, braid-graph, word-graph, bruhat, \
                             consistent, gr or reflection-order"
                        .into(),
                })
            }
        })
    }
}

/// Parameters of a `show` request. `k` defaults to 2.
#[derive(Clone, Debug)]
pub struct Request {
    pub w: AffinePermutation,
    pub k: Option<usize>,
    /// `R ⊆ Inv_{k+1}(w)` for `G_R`.
    pub r: Vec<KClass>,
    pub word: Option<Word>,
    pub format: Format,
}

impl Request {
    pub fn new(w: AffinePermutation) -> Self {
        Request {
            w,
            k: None,
            r: Vec::new(),
            word: None,
            format: Format::Text,
        }
    }

    fn k(&self) -> usize {
        self.k.unwrap_or(2)
    }
}

/// Parses `"1256,1356"` or `"[1,2,5,6];[1,3,5,6]"` into classes; `-` or an
/// empty string is the empty set.
pub fn parse_class_list(s: &str, n: usize) -> Result<Vec<KClass>> {
    let t = s.trim();
    if t.is_empty() || t == "-" {
        return Ok(Vec::new());
    }
    if t.contains('[') {
        t.split(';').map(|p| parse_class(p, n)).collect()
    } else {
        t.split(',').map(|p| parse_class(p, n)).collect()
    }
}

fn no_dot(what: &str) -> Error {
    Error::Unsupported(format!("{what} has no DOT rendering"))
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn show(target: Target, req: &Request) -> Result<String> {
    let w = &req.w;
    let mut out = String::new();
    match target {
        Target::Inversions => {
            let level = Level::new(w, req.k())?;
            match req.format {
                Format::Text => level.inversions().iter().for_each(|x| writeln!(out, "{x}").unwrap()),
                Format::Json => out = pretty(serde_json::json!(level.inversions())),
                Format::Dot => return Err(no_dot("an inversion list")),
            }
        }
        Target::PermanentPoset => {
            let level = Level::new(w, req.k())?;
            let poset = level.poset();
            match req.format {
                Format::Text => {
                    writeln!(out, "elements: {}", join(poset.elements())).unwrap();
                    for (a, b) in poset.covers() {
                        writeln!(out, "{a} < {b}").unwrap();
                    }
                }
                Format::Json => out = pretty(poset.to_json()),
                Format::Dot => out = poset.to_dot("P", |x| x.to_string()),
            }
        }
        Target::BraidGraph => {
            let g = BraidGraph::new(w);
            match req.format {
                Format::Text => {
                    for c in 0..g.classes.len() {
                        writeln!(out, "class {c}: {}", join(&g.classes.class_words(c))).unwrap();
                    }
                    for (a, b, ()) in g.graph.arcs() {
                        writeln!(out, "{} -> {}", g.classes.label(a), g.classes.label(b)).unwrap();
                    }
                }
                Format::Json => out = pretty(g.to_json()),
                Format::Dot => out = g.to_dot(),
            }
        }
        Target::WordGraph => match req.format {
            Format::Dot => out = crate::words::word_graph_dot(w),
            Format::Text => reduced_words(w).iter().for_each(|u| writeln!(out, "{u}").unwrap()),
            Format::Json => out = pretty(serde_json::json!(reduced_words(w))),
        },
        Target::Bruhat => {
            let b = HigherBruhat::new(Level::new(w, req.k())?)?;
            match req.format {
                Format::Text => {
                    for (c, members) in b.classes.classes().iter().enumerate() {
                        writeln!(
                            out,
                            "class {c}: {} orders, reversal set {{{}}}, representative ({})",
                            members.len(),
                            join(&b.reversal_labels(c)),
                            join(&b.classes.labels(members[0]))
                        )
                        .unwrap();
                    }
                    for (a, c) in b.poset.covers() {
                        writeln!(out, "{a} < {c}").unwrap();
                    }
                }
                Format::Json => out = pretty(b.to_json()),
                Format::Dot => out = b.to_dot(),
            }
        }
        Target::Consistent => {
            let c = ConsistentPoset::new(Level::new(w, req.k())?)?;
            match req.format {
                Format::Text => {
                    for i in 0..c.sets().len() {
                        writeln!(out, "{i}: {{{}}}", join(&c.labels(i))).unwrap();
                    }
                    for (a, b) in c.poset.covers() {
                        writeln!(out, "{a} < {b}").unwrap();
                    }
                }
                Format::Json => out = pretty(c.to_json()),
                Format::Dot => out = c.to_dot(),
            }
        }
        Target::Gr => {
            let level = Level::new(w, req.k())?;
            let bits = level.upper_set_of(&req.r)?;
            let g = build_gr(&level, &bits);
            match req.format {
                Format::Text => {
                    let inv = level.inversions();
                    for &(a, b, t) in &g.arcs {
                        writeln!(out, "{} -> {} {t:?}", inv[a], inv[b]).unwrap();
                    }
                    match g.find_cycle() {
                        None => writeln!(out, "acyclic").unwrap(),
                        Some(c) => writeln!(out, "cycle: {}", join(&c)).unwrap(),
                    }
                }
                Format::Json => out = pretty(g.to_json()),
                Format::Dot => out = g.to_dot(),
            }
        }
        Target::ReflectionOrder => {
            let word = req
                .word
                .as_ref()
                .ok_or_else(|| Error::Unsupported("reflection-order needs a word".into()))?;
            let rho = reflection_order(word)?;
            let level = Level::new(&word.apply(), 2)?;
            let idx = crate::admissible::order_indices(&level, &rho)?;
            let rev = level.classes_of_upper(&reversal_set(&level, &idx));
            match req.format {
                Format::Text => {
                    writeln!(out, "order: ({})", join(&rho)).unwrap();
                    writeln!(out, "reversal set: {{{}}}", join(&rev)).unwrap();
                }
                Format::Json => out = pretty(serde_json::json!({ "order": rho, "reversal_set": rev })),
                Format::Dot => return Err(no_dot("a reflection order")),
            }
        }
    }
    Ok(out)
}

/// Collections that `enumerate` lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Listing {
    Elements,
    Words,
    Admissible,
    Consistent,
}

impl FromStr for Listing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "elements" => Listing::Elements,
            "words" => Listing::Words,
            "admissible" => Listing::Admissible,
            "consistent" => Listing::Consistent,
            _ => {
                return Err(Error::Parse {
                    what: "listing",
                    input: s.into(),
                    reason: "expected elements, words, admissible or consistent".into(),
                })
            }
        })
    }
}

/// `elements` lists all affine elements of length at most `max_len`, or all
/// of `S_n` without a bound; the others list objects attached to `w`.
pub fn enumerate(what: Listing, n: usize, w: Option<&AffinePermutation>, k: usize, max_len: Option<usize>, format: Format) -> Result<String> {
    if format == Format::Dot {
        return Err(no_dot("a listing"));
    }
    let need_w = || w.ok_or_else(|| Error::Unsupported("this listing needs a window".into()));
    let rows: Vec<serde_json::Value> = match what {
        Listing::Elements => {
            let all = match max_len {
                Some(l) => AffinePermutation::enumerate_up_to_length(n, l),
                None => AffinePermutation::finite_group(n),
            };
            all.iter()
                .map(|v| serde_json::json!({ "window": v.to_string(), "length": v.length() }))
                .collect()
        }
        Listing::Words => reduced_words(need_w()?).iter().map(|u| serde_json::json!(u)).collect(),
        Listing::Admissible => {
            let level = Level::new(need_w()?, k)?;
            let inv = level.inversions();
            enumerate_admissible(&level)
                .map(|o| serde_json::json!(o.iter().map(|&i| &inv[i]).collect::<Vec<_>>()))
                .collect()
        }
        Listing::Consistent => {
            let c = ConsistentPoset::new(Level::new(need_w()?, k)?)?;
            (0..c.sets().len()).map(|i| serde_json::json!(c.labels(i))).collect()
        }
    };
    Ok(match format {
        Format::Json => pretty(serde_json::Value::Array(rows)),
        _ => {
            let mut out = String::new();
            for r in &rows {
                match r {
                    serde_json::Value::String(s) => writeln!(out, "{s}").unwrap(),
                    serde_json::Value::Object(m) => {
                        writeln!(out, "{} {}", m["window"].as_str().unwrap(), m["length"]).unwrap()
                    }
                    other => writeln!(out, "{}", flatten(other)).unwrap(),
                }
            }
            writeln!(out, "# {} total", rows.len()).unwrap();
            out
        }
    })
}

/// Nested integer arrays as `[1,3,4] [1,2,4] ...`.
fn flatten(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Array(xs) if xs.iter().all(|x| x.is_array()) => {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}
