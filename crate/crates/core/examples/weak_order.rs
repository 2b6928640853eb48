//! The weak-order interval below w, seen as 2-consistent sets and, for
//! finite w, as the higher Bruhat order at k = 1.

use higher_bruhat::consistent::rev_isomorphism_check;
use higher_bruhat::verify::{run_sweep, Suite, SweepSpec};
use higher_bruhat::{AffinePermutation, ConsistentPoset, Level};

fn main() {
    let w: AffinePermutation = "(4,2,3,1)".parse().unwrap();
    let interval = w.weak_interval();
    let c2 = ConsistentPoset::new(Level::new(&w, 2).unwrap()).unwrap();
    println!("[id, {w}] has {} elements, C_w(4,2) has {}", interval.len(), c2.sets().len());
    println!("B_w(4,1) matches C_w(4,2): {}", rev_isomorphism_check(&w, 1).unwrap().passed());

    for (n, max_len) in [(4, None), (3, Some(6))] {
        let report = run_sweep(&SweepSpec::new(Suite::WeakOrder, n, max_len)).unwrap();
        println!("n = {n}, max_len = {max_len:?}: {:?}", report.summary);
    }
}
