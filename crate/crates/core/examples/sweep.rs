//! A bounded sweep with a resource budget, a JSON report, and replay of a
//! failure witness.

use higher_bruhat::verify::{gr_acyclic_record, run_sweep, Suite, SweepSpec};
use higher_bruhat::{AffinePermutation, Level};

fn main() {
    let spec = SweepSpec::new(Suite::GrAcyclic, 3, Some(8)).with_k(2, 3);
    let report = run_sweep(&spec).unwrap();
    println!(
        "{}: {:?}, {} consistent sets, {} cyclic, {} ms",
        spec.suite,
        report.summary,
        report.total("sets"),
        report.total("cyclic"),
        report.elapsed_ms
    );

    // G_R for sets that are not consistent may have cycles; the witness
    // records R and the cycle and replays through the library.
    let w: AffinePermutation = "(6,4,5,2,3,1)".parse().unwrap();
    let upper = Level::new(&w, 3).unwrap().upper().to_vec();
    for x in &upper {
        let record = gr_acyclic_record(&w, 3, &[vec![x.clone()]]).unwrap();
        if let Some(witness) = record.witness {
            println!("{}", serde_json::to_string(&witness).unwrap());
            println!("replays: {}", witness.replay().unwrap());
            break;
        }
    }
}
