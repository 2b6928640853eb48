//! Admissible orders, their commutation classes and the higher Bruhat order
//! generated by packet flips.

use higher_bruhat::{AffinePermutation, HigherBruhat, Level};

fn main() {
    let w: AffinePermutation = "(6,4,5,2,3,1)".parse().unwrap();
    let b = HigherBruhat::new(Level::new(&w, 3).unwrap()).unwrap();
    let oc = &b.classes;
    println!("{} admissible orders in {} classes", oc.orders().len(), oc.classes().len());
    for (c, members) in oc.classes().iter().enumerate() {
        let rep: Vec<String> = oc.labels(members[0]).iter().map(|x| x.to_string()).collect();
        let rev: Vec<String> = b.reversal_labels(c).iter().map(|x| x.to_string()).collect();
        println!("  class {c} ({} orders), reversal set {{{}}}", members.len(), rev.join(","));
        println!("    {}", rep.join(" "));
    }
    let upper = b.level().upper();
    for e in &b.flips {
        println!("  flip at P({}): class {} -> class {}", upper[e.packet], e.from, e.to);
    }
    let audit = oc.audit();
    println!(
        "audited {} commutations and {} flips, {} failures",
        audit.commutations,
        audit.flips,
        audit.failures.len()
    );
}
