//! Finite skew braces, the set-theoretic solutions of the Yang–Baxter
//! equation they induce, and an exhaustive small-order enumeration engine.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] — finite groups as Cayley tables, subgroup machinery,
//!   automorphism groups and holomorphs;
//! * [`catalog`] — one representative per isomorphism class for every
//!   group of order at most 15;
//! * [`brace`] — skew braces, the λ/star calculus, ideals, series and
//!   the algebraic property predicates;
//! * [`solution`] — non-degenerate set-theoretic solutions, retraction,
//!   multipermutation level and supersoluble-solution witnesses;
//! * [`construct`] — two semidirect-product constructions of skew braces
//!   together with their criteria, and the explicit example families;
//! * [`enumerate`] — all skew braces of a given small order up to
//!   isomorphism, via regular subgroups of holomorphs;
//! * [`arith`] — the purely arithmetical predicates on group orders;
//! * [`verify`] — the harness comparing arithmetic predicates against
//!   exhaustive enumeration.

pub mod arith;
pub mod brace;
pub mod catalog;
pub mod construct;
pub mod enumerate;
pub mod group;
pub mod perm;
pub mod solution;
pub mod verify;

pub use brace::SkewBrace;
pub use group::FiniteGroup;
pub use solution::Solution;
