//! Higher Bruhat orders of the longest elements of small symmetric groups.

use higher_bruhat::{AffinePermutation, HigherBruhat, Level};

fn main() {
    for n in 3..=6 {
        let w0 = AffinePermutation::longest_finite(n);
        let sizes: Vec<String> = (1..n)
            .filter(|&k| !(n == 6 && k <= 2))
            .map(|k| {
                let b = HigherBruhat::new(Level::new(&w0, k).unwrap()).unwrap();
                format!("B({n},{k}) = {}", b.classes.classes().len())
            })
            .collect();
        println!("{}", sizes.join(", "));
    }
}
