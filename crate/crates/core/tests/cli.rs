use std::process::{Command, Output};

fn hbo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn show_renders_objects() {
    let o = hbo(&["show", "braid-graph", "--n", "4", "--window", "(1,7,2,0)", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("->").count(), 5);

    let o = hbo(&["show", "consistent", "--window", "(6,4,5,2,3,1)", "--k", "4"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.contains('{')).count(), 6);

    let o = hbo(&["show", "inversions", "--window", "(1,2,3,4)", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());

    let o = hbo(&["show", "reflection-order", "--n", "4", "--word", "232124134"]);
    assert!(stdout(&o).contains("[2,3], [2,4], [3,4], [1,4], [1,3], [2,8], [2,7], [1,8], [1,7]"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(hbo(&["show", "nothing", "--window", "(1,2)"]).status.code(), Some(2));
    assert_eq!(hbo(&["show", "inversions", "--window", "(1,1,4)"]).status.code(), Some(2));
    let o = hbo(&["show", "inversions", "--window", "(1,7,2,0)", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infinite"));
    assert_eq!(hbo(&["verify", "--suite", "gr-acyclic", "--n", "3", "--max-len", "3", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn verify_writes_a_report() {
    let dir = std::env::temp_dir().join(format!("hbo-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = hbo(&[
        "verify", "--suite", "braid-graph", "--n", "3", "--max-len", "5", "--workers", "2", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["summary"]["fail"], 0);
    assert!(report["summary"]["pass"].as_u64().unwrap() > 0);
    assert!(report["records"].as_array().unwrap().iter().all(|r| r["pass"] == true));
    assert!(report["elapsed_ms"].is_number());
    assert_eq!(report["spec"]["suite"], "braid-graph");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn budget_skips_exit_with_three_only_when_strict() {
    let args = ["verify", "--suite", "bruhat-isomorphism", "--n", "4", "--k", "2", "--budget-inversions", "2"];
    let o = hbo(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(hbo(&strict).status.code(), Some(3));
}

#[test]
fn reproduce_reports_matches() {
    for name in ["braid-words", "permanent-poset", "consistent-sets", "gr-arcs", "reversal-sets", "admissible-count"] {
        let o = hbo(&["reproduce", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("DIFF"));
    }
    assert!(stdout(&hbo(&["reproduce", "admissible-count"])).contains("1228"));
}

#[test]
fn enumerate_lists() {
    let o = hbo(&["enumerate", "elements", "--n", "4"]);
    assert!(stdout(&o).ends_with("# 24 total\n"));
    let o = hbo(&["enumerate", "admissible", "--window", "(6,4,5,2,3,1)", "--k", "3"]);
    assert!(stdout(&o).ends_with("# 1228 total\n"));
    let o = hbo(&["enumerate", "words", "--window", "(1,7,2,0)"]);
    assert!(stdout(&o).ends_with("# 10 total\n"));
}
