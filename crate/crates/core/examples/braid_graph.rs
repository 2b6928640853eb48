//! Reduced words of an affine permutation, their commutation classes and the
//! directed braid graph between classes.
//!
//!     cargo run --example braid_graph -- "(1,7,2,0)"

use higher_bruhat::{AffinePermutation, BraidGraph};

fn main() {
    let window = std::env::args().nth(1).unwrap_or_else(|| "(1,7,2,0)".into());
    let w: AffinePermutation = window.parse().expect("a window such as (1,7,2,0)");
    let g = BraidGraph::new(&w);

    println!("w = {w}, length {}", w.length());
    println!("{} reduced words in {} commutation classes", g.classes.words.len(), g.classes.len());
    for c in 0..g.classes.len() {
        let words: Vec<String> = g.classes.class_words(c).iter().map(|u| u.to_string()).collect();
        println!("  class {c}: {}", words.join(" "));
    }
    let report = g.graph.checks();
    println!(
        "acyclic: {}, sources: {}, sinks: {}, diameter: {:?}",
        report.acyclic,
        report.sources.len(),
        report.sinks.len(),
        report.undirected_diameter
    );
    print!("{}", g.to_dot());
}
