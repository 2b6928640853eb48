//! Bounded sweeps that machine-check the structural statements over every
//! element of a family, with a resource budget and replayable witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::admissible::{compare_words_and_orders, enumerate_admissible, HigherBruhat};
use crate::axioms::{inversion_set_axiom_check, reflection_axiom_check};
use crate::consistent::{
    build_gr, compare_bruhat_and_consistent, compare_chains_and_orders, consistency_violation,
    enumerate_consistent, ConsistentPoset,
};
use crate::error::{Error, Result};
use crate::kclass::{classify_packet_intersection, is_quasi_inversion, InversionTable, KClass, PacketShape};
use crate::perm::AffinePermutation;
use crate::permanent::Level;
use crate::poset::poset_isomorphic_with;
use crate::words::BraidGraph;

/// A named set of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// `G(w)` against `B_w(n,2)` and `C_w(n,3)`.
    BraidGraph,
    /// `Rev: B_w(n,k) → C_w(n,k+1)` plus chains of `C_w(n,k+1)`.
    BruhatIsomorphism,
    /// `G_R` is acyclic for every consistent `R ⊆ Inv_{k+1}(w)`.
    GrAcyclic,
    PacketShapes,
    PacketAntichain,
    MoveClosure,
    RevInverse,
    Ranked,
    InversionAxioms,
    ReflectionAxioms,
    WordOrder,
    ChainOrder,
    WeakOrder,
}

const SUITES: [(Suite, &str, &str); 13] = [
    (Suite::BraidGraph, "braid-graph", "thm13"),
    (Suite::BruhatIsomorphism, "bruhat-isomorphism", "thm14"),
    (Suite::GrAcyclic, "gr-acyclic", "conj-gr"),
    (Suite::PacketShapes, "packet-shapes", "lemma32"),
    (Suite::PacketAntichain, "packet-antichain", "lemma34"),
    (Suite::MoveClosure, "move-closure", "lemma37"),
    (Suite::RevInverse, "rev-inverse", "thm311"),
    (Suite::Ranked, "ranked", "cor312"),
    (Suite::InversionAxioms, "inversion-axioms", "thm41"),
    (Suite::ReflectionAxioms, "reflection-axioms", "cor42"),
    (Suite::WordOrder, "word-order", "lemma44"),
    (Suite::ChainOrder, "chain-order", "eq5"),
    (Suite::WeakOrder, "weak-order", "weak"),
];

impl Suite {
    pub fn all() -> impl Iterator<Item = Suite> {
        SUITES.iter().map(|s| s.0)
    }

    pub fn name(self) -> &'static str {
        SUITES.iter().find(|s| s.0 == self).unwrap().1
    }

    pub fn alias(self) -> &'static str {
        SUITES.iter().find(|s| s.0 == self).unwrap().2
    }

    /// Whether instances are `(w, k)` pairs rather than single elements.
    pub fn uses_k(self) -> bool {
        matches!(
            self,
            Suite::BruhatIsomorphism
                | Suite::GrAcyclic
                | Suite::PacketShapes
                | Suite::PacketAntichain
                | Suite::MoveClosure
                | Suite::RevInverse
                | Suite::Ranked
                | Suite::ChainOrder
        )
    }

    /// Least `k` supported for affine elements: `Inv_1` is infinite.
    fn affine_min_k(self) -> usize {
        2
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SUITES
            .iter()
            .find(|(_, name, alias)| *name == s || *alias == s)
            .map(|s| s.0)
            .ok_or_else(|| Error::Parse {
                what: "suite",
                input: s.to_string(),
                reason: format!(
                    "expected one of {}",
                    SUITES.iter().map(|s| s.1).collect::<Vec<_>>().join(", ")
                ),
            })
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Suite {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Limits above which an instance is skipped instead of enumerated.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Budget {
    pub max_inversions: usize,
    /// Bound on the linear-extension count of the permanent poset.
    pub max_extensions: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_inversions: 24,
            max_extensions: 10_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_inversions: usize::MAX,
            max_extensions: u128::MAX,
        }
    }

    fn size(&self, level: &Level) -> std::result::Result<(), String> {
        if level.len() > self.max_inversions {
            return Err(format!(
                "|Inv_{}| = {} exceeds {}",
                level.k(),
                level.len(),
                self.max_inversions
            ));
        }
        Ok(())
    }

    /// Size guard plus the linear-extension estimate, for levels whose
    /// admissible orders are enumerated.
    fn orders(&self, level: &Level) -> std::result::Result<(), String> {
        self.size(level)?;
        if self.max_extensions == u128::MAX {
            return Ok(());
        }
        match level.poset().count_linear_extensions_capped(1 << 20) {
            Some(c) if c <= self.max_extensions => Ok(()),
            Some(c) => Err(format!(
                "{c} linear extensions at level {} exceed {}",
                level.k(),
                self.max_extensions
            )),
            None => Err(format!("linear extensions at level {} too many to estimate", level.k())),
        }
    }
}

/// What to sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepSpec {
    pub n: usize,
    /// `Some(l)`: all affine elements of length at most `l`. `None`: all of
    /// `S_n`.
    pub max_len: Option<usize>,
    /// Inclusive bounds; defaults depend on the family.
    pub k_range: Option<(usize, usize)>,
    pub suite: Suite,
    pub workers: usize,
    pub budget: Budget,
    pub output: Option<String>,
}

impl SweepSpec {
    pub fn new(suite: Suite, n: usize, max_len: Option<usize>) -> Self {
        SweepSpec {
            n,
            max_len,
            k_range: None,
            suite,
            workers: 1,
            budget: Budget::default(),
            output: None,
        }
    }

    pub fn with_k(mut self, lo: usize, hi: usize) -> Self {
        self.k_range = Some((lo, hi));
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn is_affine(&self) -> bool {
        self.max_len.is_some()
    }

    /// The inclusive `k` bounds after defaults, validated.
    pub fn resolved_k(&self) -> Result<(usize, usize)> {
        if self.n < 2 {
            return Err(Error::Unsupported(format!("rank {} has no inversions", self.n)));
        }
        let lo_default = if self.is_affine() { self.suite.affine_min_k() } else { 1 };
        let (lo, hi) = self.k_range.unwrap_or((lo_default, self.n));
        if lo > hi {
            return Err(Error::Unsupported(format!("empty k range {lo}..={hi}")));
        }
        if self.suite.uses_k() {
            if lo == 0 {
                return Err(Error::Unsupported("k must be positive".into()));
            }
            if self.is_affine() && lo < self.suite.affine_min_k() {
                return Err(Error::Unsupported(format!(
                    "suite {} needs k >= {} for affine elements",
                    self.suite,
                    self.suite.affine_min_k()
                )));
            }
        }
        Ok((lo, hi))
    }

    pub fn elements(&self) -> Vec<AffinePermutation> {
        match self.max_len {
            Some(l) => AffinePermutation::enumerate_up_to_length(self.n, l),
            None => AffinePermutation::finite_group(self.n),
        }
    }

    /// All `(w, k)` instances, `k = None` for per-element suites.
    pub fn instances(&self) -> Result<Vec<(AffinePermutation, Option<usize>)>> {
        let (lo, hi) = self.resolved_k()?;
        let mut out = Vec::new();
        for w in self.elements() {
            if self.suite.uses_k() {
                out.extend((lo..=hi).map(|k| (w.clone(), Some(k))));
            } else {
                out.push((w, None));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

/// Enough to rerun a failing check through the library. `R` and `cycle`
/// are present for acyclicity failures of `G_R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub suite: Suite,
    pub w: String,
    pub k: Option<usize>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<Vec<i64>>>,
    pub detail: String,
}

impl Witness {
    /// Whether the failure still reproduces.
    pub fn replay(&self) -> Result<bool> {
        let w: AffinePermutation = self.w.parse()?;
        if let (Some(r), Some(k)) = (&self.r, self.k) {
            let level = Level::new(&w, k)?;
            let classes: Vec<KClass> = r.iter().map(|raw| KClass::canonicalize(raw, w.n())).collect::<Result<_>>()?;
            let set = level.upper_set_of(&classes)?;
            return Ok(!build_gr(&level, &set).is_acyclic());
        }
        Ok(run_instance(self.suite, &w, self.k, &Budget::unlimited()).outcome == Outcome::Fail)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Record {
    pub w: String,
    pub k: Option<usize>,
    pub check: Suite,
    pub outcome: Outcome,
    /// False exactly for failures; such records carry a witness.
    pub pass: bool,
    pub counters: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub spec: SweepSpec,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    /// Sum of one counter over all records.
    pub fn total(&self, counter: &str) -> u64 {
        self.records.iter().filter_map(|r| r.counters.get(counter)).sum()
    }
}

/// Runs every instance of `spec` on a pool of `spec.workers` threads.
/// Records are sorted by length, window and `k`, so the report does not
/// depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Report> {
    let start = Instant::now();
    let instances = spec.instances()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers.max(1))
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    type Key = (usize, Vec<i64>, Option<usize>);
    let mut keyed: Vec<(Key, Record)> = pool.install(|| {
        instances
            .par_iter()
            .map(|(w, k)| {
                let key = (w.length(), w.window().to_vec(), *k);
                (key, run_instance(spec.suite, w, *k, &spec.budget))
            })
            .collect()
    });
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let records: Vec<Record> = keyed.into_iter().map(|(_, r)| r).collect();
    let mut summary = Summary::default();
    for r in &records {
        match r.outcome {
            Outcome::Pass => summary.pass += 1,
            Outcome::Fail => summary.fail += 1,
            Outcome::Skip => summary.skip += 1,
        }
    }
    Ok(Report {
        spec: spec.clone(),
        records,
        summary,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

type RawClasses = Vec<Vec<i64>>;

/// Accumulates counters and the first failure of one instance: detail,
/// then `R` and cycle for `G_R` failures.
struct Run {
    counters: BTreeMap<String, u64>,
    failure: Option<(String, Option<RawClasses>, Option<RawClasses>)>,
}

impl Run {
    fn new() -> Self {
        Run {
            counters: BTreeMap::new(),
            failure: None,
        }
    }

    fn count(&mut self, name: &str, v: usize) {
        *self.counters.entry(name.to_string()).or_insert(0) += v as u64;
    }

    fn fail(&mut self, detail: impl Into<String>) {
        if self.failure.is_none() {
            self.failure = Some((detail.into(), None, None));
        }
    }

    fn fail_all(&mut self, failures: &[String]) {
        if let Some(f) = failures.first() {
            self.fail(f.clone());
        }
        self.count("failures", failures.len());
    }
}

enum Stop {
    Skip(String),
    Error(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge(..) => Stop::Skip(e.to_string()),
            e => Stop::Error(e),
        }
    }
}

fn skip_if(r: std::result::Result<(), String>) -> std::result::Result<(), Stop> {
    r.map_err(Stop::Skip)
}

/// Runs one suite on one instance.
pub fn run_instance(suite: Suite, w: &AffinePermutation, k: Option<usize>, budget: &Budget) -> Record {
    let mut run = Run::new();
    let k_val = k.unwrap_or(2);
    let result = match suite {
        Suite::BraidGraph => braid_graph(w, budget, &mut run),
        Suite::BruhatIsomorphism => bruhat_isomorphism(w, k_val, budget, &mut run, true),
        Suite::RevInverse => bruhat_isomorphism(w, k_val, budget, &mut run, false),
        Suite::GrAcyclic => gr_acyclic(w, k_val, budget, &mut run),
        Suite::PacketShapes => packet_shapes(w, k_val, &mut run),
        Suite::PacketAntichain => packet_antichain(w, k_val, &mut run),
        Suite::MoveClosure => move_closure(w, k_val, budget, &mut run),
        Suite::Ranked => ranked(w, k_val, budget, &mut run),
        Suite::InversionAxioms => axioms(w, &mut run, true),
        Suite::ReflectionAxioms => axioms(w, &mut run, false),
        Suite::WordOrder => word_order(w, budget, &mut run),
        Suite::ChainOrder => chain_order(w, k_val, budget, &mut run),
        Suite::WeakOrder => weak_order(w, budget, &mut run),
    };
    let mut skip_reason = None;
    match result {
        Ok(()) => {}
        Err(Stop::Skip(reason)) => skip_reason = Some(reason),
        Err(Stop::Error(e)) => run.fail(e.to_string()),
    }
    let outcome = match (&skip_reason, &run.failure) {
        (_, Some(_)) => Outcome::Fail,
        (Some(_), None) => Outcome::Skip,
        (None, None) => Outcome::Pass,
    };
    let witness = run.failure.map(|(detail, r, cycle)| Witness {
        suite,
        w: w.to_string(),
        k,
        r,
        cycle,
        detail,
    });
    Record {
        w: w.to_string(),
        k,
        check: suite,
        outcome,
        pass: outcome != Outcome::Fail,
        counters: run.counters,
        skip_reason,
        witness,
    }
}

type Step = std::result::Result<(), Stop>;

fn braid_graph(w: &AffinePermutation, budget: &Budget, run: &mut Run) -> Step {
    let level2 = Level::new(w, 2)?;
    let level3 = Level::new(w, 3)?;
    skip_if(budget.orders(&level2))?;
    skip_if(budget.size(&level3))?;

    let braid = BraidGraph::new(w);
    let report = braid.graph.checks();
    run.count("words", braid.classes.words.len());
    run.count("word_classes", braid.classes.len());
    run.count("braid_arcs", braid.graph.arc_count());
    run.count("inv3", level3.len());
    if !report.acyclic {
        run.fail("G(w) has a directed cycle");
    }
    if report.sources.len() != 1 || report.sinks.len() != 1 {
        run.fail(format!(
            "G(w) has {} sources and {} sinks",
            report.sources.len(),
            report.sinks.len()
        ));
    }
    match report.undirected_diameter {
        Some(d) if d == level3.len() => {}
        d => run.fail(format!("diameter of G(w) is {d:?}, |Inv_3(w)| = {}", level3.len())),
    }

    let bruhat = HigherBruhat::new(level2.clone())?;
    let words = compare_words_and_orders(&braid, &bruhat);
    run.count("orders", words.orders);
    run.count("order_classes", words.order_classes);
    if !words.hasse_matches_braid_graph && words.failures.is_empty() {
        run.fail("Hasse diagram of B_w(n,2) differs from G(w)");
    }
    run.fail_all(&words.failures);

    let c3 = ConsistentPoset::new(level3)?;
    let rev = compare_bruhat_and_consistent(&bruhat, &c3);
    run.count("consistent_sets", rev.consistent_sets);
    run.count("strict_packet_failures", rev.strict_packet_failures);
    run.fail_all(&rev.failures);

    let c2 = ConsistentPoset::new(level2)?;
    let chains = compare_chains_and_orders(&c2, bruhat.classes.orders());
    run.count("chains", chains.chains);
    run.fail_all(&chains.failures);
    if chains.chains != braid.classes.words.len() {
        run.fail(format!(
            "{} maximal chains of C_w(n,2) but {} reduced words",
            chains.chains,
            braid.classes.words.len()
        ));
    }
    Ok(())
}

fn bruhat_isomorphism(w: &AffinePermutation, k: usize, budget: &Budget, run: &mut Run, chains: bool) -> Step {
    let level = Level::new(w, k)?;
    let upper = Level::new(w, k + 1)?;
    skip_if(budget.orders(&level))?;
    if chains {
        skip_if(budget.orders(&upper))?;
    } else {
        skip_if(budget.size(&upper))?;
    }
    let bruhat = HigherBruhat::new(level)?;
    let consistent = ConsistentPoset::new(upper)?;
    let rev = compare_bruhat_and_consistent(&bruhat, &consistent);
    run.count("classes", rev.classes);
    run.count("consistent_sets", rev.consistent_sets);
    run.count("rev_inverse_checked", rev.rev_inverse_checked);
    run.count("strict_consistent_sets", rev.strict_consistent_sets);
    run.count("strict_packet_failures", rev.strict_packet_failures);
    run.fail_all(&rev.failures);
    if chains {
        let orders: Vec<Vec<usize>> = enumerate_admissible(consistent.level()).collect();
        let report = compare_chains_and_orders(&consistent, &orders);
        run.count("chains", report.chains);
        run.fail_all(&report.failures);
    }
    Ok(())
}

fn gr_acyclic(w: &AffinePermutation, k: usize, budget: &Budget, run: &mut Run) -> Step {
    let level = Level::new(w, k)?;
    let upper = Level::new(w, k + 1)?;
    skip_if(budget.size(&level))?;
    skip_if(budget.size(&upper))?;
    let sets = enumerate_consistent(&upper, false);
    gr_acyclic_on(&level, &sets, run);
    Ok(())
}

/// Checks `G_R` for each `R` (bit sets over `level.upper()`), recording the
/// first cycle as a witness and counting the rest.
fn gr_acyclic_on(level: &Level, sets: &[FixedBitSet], run: &mut Run) {
    run.count("sets", sets.len());
    run.count("cyclic", 0);
    for r in sets {
        let gr = build_gr(level, r);
        run.count("arcs", gr.arcs.len());
        if let Some(cycle) = gr.find_cycle() {
            run.count("cyclic", 1);
            if run.failure.is_none() {
                let raw = |xs: &[KClass]| xs.iter().map(|x| x.elements().to_vec()).collect::<Vec<_>>();
                run.failure = Some((
                    format!("G_R has a directed cycle of length {}", cycle.len()),
                    Some(raw(&level.classes_of_upper(r))),
                    Some(raw(&cycle)),
                ));
            }
        }
    }
}

/// Runs the `G_R` acyclicity check on explicitly given sets `R`, consistent
/// or not. Used to exercise witness generation.
pub fn gr_acyclic_record(w: &AffinePermutation, k: usize, sets: &[Vec<KClass>]) -> Result<Record> {
    let level = Level::new(w, k)?;
    let bits: Vec<FixedBitSet> = sets.iter().map(|s| level.upper_set_of(s)).collect::<Result<_>>()?;
    let mut run = Run::new();
    gr_acyclic_on(&level, &bits, &mut run);
    let failed = run.failure.is_some();
    Ok(Record {
        w: w.to_string(),
        k: Some(k),
        check: Suite::GrAcyclic,
        outcome: if failed { Outcome::Fail } else { Outcome::Pass },
        pass: !failed,
        counters: run.counters,
        skip_reason: None,
        witness: run.failure.map(|(detail, r, cycle)| Witness {
            suite: Suite::GrAcyclic,
            w: w.to_string(),
            k: Some(k),
            r,
            cycle,
            detail,
        }),
    })
}

fn packet_shapes(w: &AffinePermutation, k: usize, run: &mut Run) -> Step {
    let table = InversionTable::new(w);
    let classes = table.interacting_classes(k)?;
    run.count("classes", classes.len());
    for x in &classes {
        match classify_packet_intersection(w, x) {
            Ok(shape) => {
                if x.k() >= 3 && is_quasi_inversion(w, x) && !matches!(shape, PacketShape::AdjacentPair(_)) {
                    run.fail(format!("quasi-inversion {x} meets Inv_{k} in {shape:?}"));
                }
                if let PacketShape::AdjacentPair(_) = shape {
                    run.count("adjacent_pairs", 1);
                }
            }
            Err(e) => {
                run.count("violations", 1);
                run.fail(e.to_string());
            }
        }
    }
    Ok(())
}

fn packet_antichain(w: &AffinePermutation, k: usize, run: &mut Run) -> Step {
    let level = Level::new(w, k)?;
    let poset = level.poset();
    run.count("inversions", level.len());
    run.count("packets", level.packets().len());
    for (p, members) in level.packets().iter().enumerate() {
        for (a, &x) in members.iter().enumerate() {
            for &y in &members[a + 1..] {
                if poset.comparable(x, y) {
                    run.fail(format!(
                        "packet of {} has comparable members {} and {}",
                        level.upper()[p],
                        level.inversions()[x],
                        level.inversions()[y]
                    ));
                }
            }
        }
    }
    Ok(())
}

fn move_closure(w: &AffinePermutation, k: usize, budget: &Budget, run: &mut Run) -> Step {
    let level = Level::new(w, k)?;
    let upper = Level::new(w, k + 1)?;
    skip_if(budget.orders(&level))?;
    let bruhat = HigherBruhat::new(level)?;
    let oc = &bruhat.classes;
    let audit = oc.audit();
    run.count("orders", oc.orders().len());
    run.count("classes", oc.classes().len());
    run.count("commutations", audit.commutations);
    run.count("flips", audit.flips);
    run.count("flip_edges", bruhat.flips.len());
    run.fail_all(&audit.failures);
    run.count("strict_packet_failures", 0);
    for c in 0..oc.classes().len() {
        let rev = oc.class_reversal(c);
        if let Some(v) = consistency_violation(&upper, rev, false) {
            run.fail(format!("reversal set of class {c} is not consistent: {v}"));
        }
        if consistency_violation(&upper, rev, true).is_some() {
            run.count("strict_packet_failures", 1);
        }
    }
    Ok(())
}

fn ranked(w: &AffinePermutation, k: usize, budget: &Budget, run: &mut Run) -> Step {
    let upper = Level::new(w, k + 1)?;
    skip_if(budget.size(&upper))?;
    let consistent = ConsistentPoset::new(upper)?;
    let rank = consistent.rank_report();
    run.count("consistent_sets", consistent.sets().len());
    if !rank.holds() {
        run.fail(format!("C_w(n,k+1) rank check failed: {rank:?}"));
    }
    Ok(())
}

fn axioms(w: &AffinePermutation, run: &mut Run, inversion_sets: bool) -> Step {
    let report = if inversion_sets {
        inversion_set_axiom_check(w)?
    } else {
        reflection_axiom_check(w)?
    };
    run.count("candidates", report.candidates);
    run.count("accepted", report.accepted);
    run.count("expected", report.expected);
    run.fail_all(&report.failures);
    if report.accepted != report.expected {
        run.fail(format!("{} accepted, {} expected", report.accepted, report.expected));
    }
    Ok(())
}

fn word_order(w: &AffinePermutation, budget: &Budget, run: &mut Run) -> Step {
    let level = Level::new(w, 2)?;
    skip_if(budget.orders(&level))?;
    let bruhat = HigherBruhat::new(level)?;
    let report = compare_words_and_orders(&BraidGraph::new(w), &bruhat);
    run.count("words", report.words);
    run.count("orders", report.orders);
    run.count("braid_moves", report.braid_moves);
    run.count("lex_flips", report.lex_flips);
    run.fail_all(&report.failures);
    if !report.hasse_matches_braid_graph && report.failures.is_empty() {
        run.fail("Hasse diagram of B_w(n,2) differs from G(w)");
    }
    Ok(())
}

fn chain_order(w: &AffinePermutation, k: usize, budget: &Budget, run: &mut Run) -> Step {
    let level = Level::new(w, k)?;
    skip_if(budget.orders(&level))?;
    let consistent = ConsistentPoset::new(level)?;
    let orders: Vec<Vec<usize>> = enumerate_admissible(consistent.level()).collect();
    let report = compare_chains_and_orders(&consistent, &orders);
    run.count("chains", report.chains);
    run.count("orders", report.orders);
    run.fail_all(&report.failures);
    Ok(())
}

/// `C_w(n,2) ≅ [id, w]` through `v ↦ inv2(v)`, and for finite `w` also
/// `B_w(n,1) ≅ C_w(n,2)`.
fn weak_order(w: &AffinePermutation, budget: &Budget, run: &mut Run) -> Step {
    let level2 = Level::new(w, 2)?;
    skip_if(budget.size(&level2))?;
    let c2 = ConsistentPoset::new(level2)?;
    let interval = w.weak_interval();
    run.count("interval", interval.len());
    run.count("consistent_sets", c2.sets().len());
    let mut image = Vec::with_capacity(interval.len());
    for v in interval.elements() {
        let classes: Vec<KClass> = v.inv2().into_iter().map(|p| KClass::from_pair(w.n(), p)).collect();
        match c2.level().set_of(&classes).ok().and_then(|s| c2.id_of(&s)) {
            Some(id) => image.push(id),
            None => {
                run.fail(format!("inversion set of {v} is not a consistent set"));
                return Ok(());
            }
        }
    }
    match poset_isomorphic_with(&interval, &c2.poset, |v| image[interval.index_of(v).unwrap()]) {
        Ok(true) => {}
        Ok(false) => run.fail("C_w(n,2) is not isomorphic to the weak interval"),
        Err(e) => run.fail(e.to_string()),
    }
    if w.is_finite() {
        let level1 = Level::new(w, 1)?;
        skip_if(budget.orders(&level1))?;
        let bruhat = HigherBruhat::new(level1)?;
        let rev = compare_bruhat_and_consistent(&bruhat, &c2);
        run.count("classes", rev.classes);
        run.fail_all(&rev.failures);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::all() {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(s.alias().parse::<Suite>().unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<Suite>(&json).unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn affine_k_one_is_refused() {
        let spec = SweepSpec::new(Suite::GrAcyclic, 3, Some(3)).with_k(1, 2);
        assert!(spec.resolved_k().is_err());
        let spec = SweepSpec::new(Suite::GrAcyclic, 3, Some(3));
        assert_eq!(spec.resolved_k().unwrap(), (2, 3));
        let spec = SweepSpec::new(Suite::GrAcyclic, 3, None);
        assert_eq!(spec.resolved_k().unwrap(), (1, 3));
    }

    #[test]
    fn each_suite_passes_on_a_small_family() {
        for s in Suite::all() {
            for max_len in [None, Some(4)] {
                let report = run_sweep(&SweepSpec::new(s, 3, max_len)).unwrap();
                assert_eq!(report.summary.fail, 0, "{s} {max_len:?}: {:?}", report.failures().next());
                assert!(report.summary.pass > 0, "{s}");
            }
        }
    }

    #[test]
    fn budget_skips_are_reported() {
        let mut spec = SweepSpec::new(Suite::BruhatIsomorphism, 4, None).with_k(2, 2);
        spec.budget.max_inversions = 3;
        let report = run_sweep(&spec).unwrap();
        assert!(report.summary.skip > 0);
        assert_eq!(report.summary.pass + report.summary.skip, 24);
        for r in report.records.iter().filter(|r| r.outcome == Outcome::Skip) {
            assert!(r.skip_reason.is_some());
            assert!(r.pass);
        }
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let base = SweepSpec::new(Suite::GrAcyclic, 3, Some(5));
        let one = run_sweep(&base).unwrap();
        let two = run_sweep(&base.clone().with_workers(2)).unwrap();
        assert_eq!(one.summary, two.summary);
        let a: Vec<_> = one.records.iter().map(|r| (&r.w, r.k, &r.counters)).collect();
        let b: Vec<_> = two.records.iter().map(|r| (&r.w, r.k, &r.counters)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn injected_cycle_produces_a_replayable_witness() {
        let w = perm("(6,4,5,2,3,1)");
        let level = Level::new(&w, 3).unwrap();
        let m = level.upper().len();
        // Some subset of Inv_4(w) that is not consistent gives a cyclic G_R.
        let mut found = None;
        for mask in 0u32..(1 << m) {
            let set: Vec<KClass> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| level.upper()[i].clone()).collect();
            let record = gr_acyclic_record(&w, 3, &[set]).unwrap();
            if record.outcome == Outcome::Fail {
                found = Some(record);
                break;
            }
        }
        let record = found.expect("a cyclic G_R among all subsets");
        assert!(!record.pass);
        let witness = record.witness.unwrap();
        assert!(witness.cycle.as_ref().is_some_and(|c| !c.is_empty()));
        let json = serde_json::to_string(&witness).unwrap();
        assert!(json.contains("\"R\""));
        let back: Witness = serde_json::from_str(&json).unwrap();
        assert!(back.replay().unwrap());

        // A witness for an instance that passes does not replay.
        let fake = Witness {
            suite: Suite::PacketAntichain,
            w: w.to_string(),
            k: Some(3),
            r: None,
            cycle: None,
            detail: "fabricated".into(),
        };
        assert!(!fake.replay().unwrap());
    }
}
