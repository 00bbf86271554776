//! Exact combinatorial kernels for deciding when a knot admits no purely
//! cosmetic surgery.
//!
//! The pipeline runs from braid or band words to a verdict:
//!
//! * [`braid`] — words over B_n, permutations, writhe, mirror image, and
//!   the alternating-word alphabets.
//! * [`diagram`] — trace-closure diagrams, smoothing-state circle counts,
//!   the diagram-level Turaev genus, and the alternation test.
//! * [`jones`] — the Kauffman bracket by two independent evaluators (a
//!   `2^c` state sum and a Catalan-basis trace) and the Jones polynomial
//!   with its span. The state sum runs in parallel with the default
//!   `parallel` feature and sequentially without it.
//! * [`bennequin`] — band-generator words, Bennequin-surface genus, band
//!   censuses, delta-conjugation, and wrap minimization.
//! * [`dealternation`] — crossing-change costs against the alternating
//!   alphabets and the word-level dealternation bound.
//! * [`obstruction`] — the inequality evaluators, candidate slope sets,
//!   and the verdict gate.
//! * [`corpus`] — seeded random word generators for tests and benches.
//!
//! All arithmetic is exact: integer Laurent polynomials ([`poly`]) and
//! `i64` rationals ([`rational`]). Every value is immutable after
//! construction and every operation is a pure function.

pub mod bennequin;
pub mod braid;
pub mod corpus;
pub mod dealternation;
pub mod diagram;
pub mod error;
pub mod jones;
pub mod obstruction;
pub mod poly;
pub mod rational;
mod uf;

pub use error::{Error, Result};
