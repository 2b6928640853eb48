//! The permanent poset on k-inversions: quasi-inversion relations, and for
//! affine elements the congruence relations between shifted classes.

use higher_bruhat::{AffinePermutation, Level};

fn show(window: &str, k: usize) {
    let w: AffinePermutation = window.parse().unwrap();
    let level = Level::new(&w, k).unwrap();
    let inv = level.inversions();
    println!("w = {w}, k = {k}: {} inversions", inv.len());
    for &(a, b) in level.quasi_relations() {
        println!("  quasi       {} < {}", inv[a], inv[b]);
    }
    for &(a, b) in level.congruence_relations() {
        println!("  congruence  {} < {}", inv[a], inv[b]);
    }
    println!("  covers: {}", level.poset().covers().len());
    println!(
        "  linear extensions: {}",
        level.poset().count_linear_extensions()
    );
}

fn main() {
    show("(6,4,5,2,3,1)", 3);
    show("(-3,-2,8,7)", 3);
}
