//! Higher Bruhat orders `B_w(n,k)` and consistent-set posets `C_w(n,k)` for
//! weak-order intervals `[id, w]` of the finite and affine symmetric groups.
//!
//! The pieces, bottom up:
//!
//! - [`perm`]: affine permutations in window notation, length, 2-inversions,
//!   weak intervals.
//! - [`words`]: reduced words, commutation classes, the directed braid graph
//!   `G(w)`.
//! - [`kclass`]: `k`-classes, packets and `k`-inversion enumeration.
//! - [`permanent`]: the permanent poset `P_w(n,k)` and per-level tables.
//! - [`admissible`]: admissible orders, commutation classes, packet flips and
//!   `B_w(n,k)`.
//! - [`consistent`]: consistent sets, `C_w(n,k)`, the graph `G_R` and the
//!   reversal-set isomorphism checks.
//! - [`axioms`]: closure-axiom descriptions of inversion sets and reflection
//!   orders.
//! - [`verify`], [`reproduce`], [`render`]: sweeps, golden-data
//!   reproduction and output formats used by the `hbo` binary.
//!
//! ```
//! use higher_bruhat::{HigherBruhat, Level, AffinePermutation};
//!
//! let w: AffinePermutation = "(6,4,5,2,3,1)".parse().unwrap();
//! let b = HigherBruhat::new(Level::new(&w, 3).unwrap()).unwrap();
//! assert_eq!(b.classes.orders().len(), 1228);
//! assert_eq!(b.classes.classes().len(), 6);
//! ```

pub mod admissible;
pub mod axioms;
pub mod consistent;
pub mod digraph;
pub mod error;
pub mod kclass;
pub mod perm;
pub mod permanent;
pub mod poset;
pub mod render;
pub mod reproduce;
pub mod verify;
pub mod words;

pub use admissible::{enumerate_admissible, reflection_order, HigherBruhat, OrderClasses};
pub use consistent::{build_gr, ConsistentPoset, GrGraph};
pub use error::{Error, Result};
pub use kclass::{KClass, Packet};
pub use perm::AffinePermutation;
pub use permanent::Level;
pub use poset::FinitePoset;
pub use words::{reduced_words, BraidGraph, Word};
