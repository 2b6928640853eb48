//! Inversion sets and reflection orders described by closure axioms on
//! 2-classes, compared with the weak order and with reduced words.

use higher_bruhat::axioms::{inversion_set_axiom_check, reflection_axiom_check};
use higher_bruhat::AffinePermutation;

fn main() {
    for window in ["(3,2,1)", "(0,4,2)", "(1,7,2,0)"] {
        let w: AffinePermutation = window.parse().unwrap();
        let sets = inversion_set_axiom_check(&w).unwrap();
        let orders = reflection_axiom_check(&w).unwrap();
        println!(
            "{w}: {}/{} subsets closed ({} expected), {}/{} total orders pass ({} expected)",
            sets.accepted, sets.candidates, sets.expected, orders.accepted, orders.candidates, orders.expected
        );
    }
}
