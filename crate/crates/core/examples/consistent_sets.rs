//! Consistent sets, the graph G_R, and recovering a commutation class of
//! admissible orders from its reversal set.

use higher_bruhat::consistent::{rev_inverse, rev_isomorphism_check};
use higher_bruhat::kclass::parse_class;
use higher_bruhat::{build_gr, AffinePermutation, ConsistentPoset, Level};

fn main() {
    let w: AffinePermutation = "(6,4,5,2,3,1)".parse().unwrap();
    let c = ConsistentPoset::new(Level::new(&w, 4).unwrap()).unwrap();
    println!("consistent subsets of Inv_4(w):");
    for i in 0..c.sets().len() {
        let s: Vec<String> = c.labels(i).iter().map(|x| x.to_string()).collect();
        println!("  {{{}}}", s.join(","));
    }
    println!("ranked: {}", c.rank_report().holds());

    let level = Level::new(&w, 3).unwrap();
    let r: Vec<_> = ["1256", "1356"].iter().map(|s| parse_class(s, 6).unwrap()).collect();
    let bits = level.upper_set_of(&r).unwrap();
    let gr = build_gr(&level, &bits);
    println!("G_R has {} arcs, acyclic: {}", gr.arcs.len(), gr.is_acyclic());
    let orders = rev_inverse(&level, &bits).unwrap();
    println!("{} admissible orders have this reversal set", orders.len());
    print!("{}", gr.to_dot());

    let report = rev_isomorphism_check(&w, 3).unwrap();
    println!("Rev is an isomorphism: {}", report.passed());
}
