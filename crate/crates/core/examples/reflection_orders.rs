//! Reflection orders of reduced words as 2-admissible orders, and directed
//! braid moves as packet flips.

use higher_bruhat::admissible::{apply_flip, order_indices, reversal_set, word_order_bijection_check};
use higher_bruhat::{reflection_order, Level, Word};

fn main() {
    let word = Word::parse(4, "232124134").unwrap();
    let w = word.apply();
    let rho = reflection_order(&word).unwrap();
    let level = Level::new(&w, 2).unwrap();
    let idx = order_indices(&level, &rho).unwrap();
    let rev = level.classes_of_upper(&reversal_set(&level, &idx));
    println!("w = {w}, word {word}");
    println!("  order: {}", rho.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    println!("  reversal set: {}", rev.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));

    for (pos, next) in word.braid_moves() {
        let flipped = order_indices(&level, &reflection_order(&next).unwrap()).unwrap();
        let packet = (0..level.upper().len())
            .find(|&p| apply_flip(&level, &idx, p).ok().as_ref() == Some(&flipped))
            .map(|p| level.upper()[p].to_string());
        println!("  braid at {pos} -> {next}: flip at {}", packet.unwrap_or("?".into()));
    }

    let report = word_order_bijection_check(&w).unwrap();
    println!(
        "{} words, {} orders, Hasse diagram equals G(w): {}",
        report.words, report.orders, report.hasse_matches_braid_graph
    );
}
