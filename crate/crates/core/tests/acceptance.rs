//! Acceptance criteria, one PASS/FAIL line each. Limits are fixed here and
//! measured in wall time on whatever profile the test binary was built with.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use higher_bruhat::admissible::{apply_flip, order_indices, reversal_set, FlipDirection, OrderClasses};
use higher_bruhat::consistent::{consistency_violation, ConsistentPoset};
use higher_bruhat::kclass::parse_class;
use higher_bruhat::reproduce::{reproduce, Artifact};
use higher_bruhat::verify::{run_sweep, Report, Suite, SweepSpec};
use higher_bruhat::{reflection_order, AffinePermutation, Level, Word};

const FIG_WORDS_LIMIT: Duration = Duration::from_secs(1);
const COUNT_LIMIT: Duration = Duration::from_secs(30);
const LEVEL_FIGURES_LIMIT: Duration = Duration::from_secs(5);
const AFFINE_EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const BRAID_SUITE_LIMIT: Duration = Duration::from_secs(600);
const ISOMORPHISM_SUITE_LIMIT: Duration = Duration::from_secs(600);
const GR_SWEEP_LIMIT: Duration = Duration::from_secs(900);
const SWEEP_WORKERS: usize = 4;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn artifacts(list: &[Artifact]) -> Outcome {
    for &a in list {
        let rep = reproduce(a).map_err(|e| e.to_string())?;
        if !rep.passed() {
            return Err(format!("{a} differs:\n{rep}"));
        }
    }
    Ok(format!("{} artifacts match", list.len()))
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// Runs sweeps and requires zero failures and zero skips.
fn sweeps(specs: Vec<SweepSpec>, extra: impl Fn(&Report) -> Result<(), String>) -> Outcome {
    let mut instances = 0;
    for spec in specs {
        let spec = spec.with_workers(SWEEP_WORKERS);
        let report = run_sweep(&spec).map_err(|e| e.to_string())?;
        let s = report.summary;
        if let Some(r) = report.failures().next() {
            return Err(format!(
                "{} n={} max_len={:?}: {} failures, first {} k={:?}: {}",
                spec.suite,
                spec.n,
                spec.max_len,
                s.fail,
                r.w,
                r.k,
                r.witness.as_ref().map_or("", |w| w.detail.as_str())
            ));
        }
        check(s.skip == 0, format!("{} n={}: {} instances skipped", spec.suite, spec.n, s.skip))?;
        extra(&report)?;
        instances += s.pass;
    }
    Ok(format!("{instances} instances, zero failures"))
}

fn fig_words() -> Outcome {
    artifacts(&[Artifact::BraidWords])
}

fn count() -> Outcome {
    artifacts(&[Artifact::AdmissibleCount, Artifact::ReversalSets])
}

fn level_figures() -> Outcome {
    artifacts(&[Artifact::PermanentPoset, Artifact::ConsistentSets, Artifact::GrArcs])?;
    // Diamond over a chain: rank sizes 1,1,2,1,1.
    let w: AffinePermutation = "(6,4,5,2,3,1)".parse().unwrap();
    let c = ConsistentPoset::new(Level::new(&w, 4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut sizes = vec![0; 5];
    for s in c.sets() {
        sizes[s.count_ones(..)] += 1;
    }
    check(sizes == vec![1, 1, 2, 1, 1], format!("rank sizes {sizes:?}"))?;
    check(c.poset.covers().len() == 6, "C_w(6,4) does not have 6 covers")?;
    Ok("permanent poset, consistent sets and G_R match".into())
}

fn affine_example() -> Outcome {
    let e = |e: higher_bruhat::Error| e.to_string();
    let w: AffinePermutation = "(-3,-2,8,7)".parse().unwrap();
    let word = Word::parse(4, "232124134").map_err(e)?;
    check(word.apply() == w, "word does not spell w")?;
    let rho = reflection_order(&word).map_err(e)?;
    let stated: Vec<_> = ["[2,3]", "[2,4]", "[3,4]", "[1,4]", "[1,3]", "[2,8]", "[2,7]", "[1,8]", "[1,7]"]
        .iter()
        .map(|s| parse_class(s, 4).unwrap())
        .collect();
    check(rho == stated, format!("reflection order {rho:?}"))?;

    let level2 = Level::new(&w, 2).map_err(e)?;
    let idx = order_indices(&level2, &rho).map_err(e)?;
    let rev = reversal_set(&level2, &idx);
    let mut got = level2.classes_of_upper(&rev);
    got.sort();
    let mut expected: Vec<_> = ["[1,3,4]", "[2,7,8]", "[1,7,8]"].iter().map(|s| parse_class(s, 4).unwrap()).collect();
    expected.sort();
    check(got == expected, format!("reversal set {got:?}"))?;

    let level3 = Level::new(&w, 3).map_err(e)?;
    let set = level3.set_of(&got).map_err(e)?;
    check(level3.poset().is_order_ideal(&set), "reversal set is not an order ideal of P_w(4,3)")?;
    check(consistency_violation(&level3, &set, false).is_none(), "reversal set is not consistent")?;

    let braided = Word::parse(4, "323124134").map_err(e)?;
    check(
        word.braid_moves().iter().any(|(_, u)| *u == braided),
        "323124134 is not one directed braid away",
    )?;
    let packet = parse_class("[2,3,4]", 4).unwrap();
    let p = level2.upper_index_of(&packet).ok_or("[2,3,4] is not a 3-inversion")?;
    let classes = OrderClasses::new(level2.clone());
    let dirs = classes.saturated_packets(&idx);
    check(
        dirs.contains(&(p, FlipDirection::LexToAntilex)),
        "P([2,3,4]) is not flippable lex to antilex",
    )?;
    let flipped = apply_flip(&level2, &idx, p).map_err(e)?;
    let rho2 = order_indices(&level2, &reflection_order(&braided).map_err(e)?).map_err(e)?;
    check(flipped == rho2, "the flip does not give the braided word's order")?;
    Ok("reflection order, reversal set, ideal, consistency and flip match".into())
}

fn braid_suite() -> Outcome {
    sweeps(
        vec![
            SweepSpec::new(Suite::BraidGraph, 3, Some(12)),
            SweepSpec::new(Suite::BraidGraph, 4, Some(9)),
        ],
        |_| Ok(()),
    )
}

fn isomorphism_suite() -> Outcome {
    sweeps(
        vec![
            SweepSpec::new(Suite::BruhatIsomorphism, 4, None).with_k(1, 4),
            SweepSpec::new(Suite::BruhatIsomorphism, 5, None).with_k(1, 5),
        ],
        |_| Ok(()),
    )
}

fn gr_sweep() -> Outcome {
    sweeps(
        vec![
            SweepSpec::new(Suite::GrAcyclic, 3, Some(10)).with_k(2, 4),
            SweepSpec::new(Suite::GrAcyclic, 4, Some(8)).with_k(2, 4),
        ],
        |r| {
            let cyclic = r.total("cyclic");
            check(cyclic == 0, format!("{cyclic} cyclic G_R"))?;
            check(r.total("sets") > 0, "no consistent sets were examined")
        },
    )
}

fn property_suites() -> Outcome {
    let mut specs = Vec::new();
    for suite in [Suite::PacketShapes, Suite::PacketAntichain, Suite::MoveClosure] {
        specs.push(SweepSpec::new(suite, 5, None));
        specs.push(SweepSpec::new(suite, 3, Some(10)).with_k(2, 3));
        specs.push(SweepSpec::new(suite, 4, Some(8)).with_k(2, 4));
    }
    specs.push(SweepSpec::new(Suite::InversionAxioms, 3, Some(6)));
    for n in [3, 4] {
        specs.push(SweepSpec::new(Suite::ReflectionAxioms, n, Some(6)));
    }
    sweeps(specs, |r| {
        if r.spec.suite == Suite::MoveClosure {
            check(r.total("flips") > 0, "no flips were generated")?;
            check(r.total("commutations") > 0, "no commutations were generated")?;
        }
        Ok(())
    })
}

fn weak_coherence() -> Outcome {
    sweeps(
        vec![
            SweepSpec::new(Suite::WeakOrder, 4, None),
            SweepSpec::new(Suite::WeakOrder, 3, Some(8)),
            SweepSpec::new(Suite::WeakOrder, 4, Some(8)),
        ],
        |_| Ok(()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("reduced words, classes and braid arcs of (1,7,2,0)", Some(FIG_WORDS_LIMIT), fig_words),
        ("1228 admissible orders in 6 classes with the listed reversal sets", Some(COUNT_LIMIT), count),
        ("permanent poset, consistent sets and tagged G_R arcs", Some(LEVEL_FIGURES_LIMIT), level_figures),
        ("affine reflection order, reversal set and packet flip", Some(AFFINE_EXAMPLE_LIMIT), affine_example),
        ("braid graph suite", Some(BRAID_SUITE_LIMIT), braid_suite),
        ("Rev isomorphism, rankedness and chains over S_4, S_5", Some(ISOMORPHISM_SUITE_LIMIT), isomorphism_suite),
        ("G_R acyclicity sweep", Some(GR_SWEEP_LIMIT), gr_sweep),
        ("packet, move and axiom property suites", None, property_suites),
        ("weak-order coherence", None, weak_coherence),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let result = match (outcome, limit) {
            (Ok(msg), Some(l)) if elapsed > *l => Err(format!("{msg}, but took longer than {l:?}")),
            (r, _) => r,
        };
        let limit = limit.map_or(String::new(), |l| format!(" / {l:?}"));
        match result {
            Ok(msg) => println!("PASS {} {name}: {msg} ({elapsed:.2?}{limit})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} ({elapsed:.2?}{limit})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
