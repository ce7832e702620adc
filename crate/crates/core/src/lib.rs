//! Computational tools for the groups `'G_n^3`, `''G_n^3` and `G_{n(n-1)}^2`
//! and the braid invariants valued in them.
//!
//! The crate is `no_std` (it only needs `alloc`). It covers:
//!
//! * generator alphabets, words and relator enumerations ([`generator`],
//!   [`word`], [`relators`]);
//! * an exact minimality / word-problem solver for `G_N^2` ([`solver`]);
//! * the maps `phi`, `h`, the forgetful projection, the free-product action
//!   `g`, the elements `c'_{i,j}` and the composite `Phi` ([`hom`]);
//! * a tracer that reads invariant words off sampled planar motions of `n`
//!   points ([`geometry`], [`trajectory`], [`tracer`]).
//!
//! File formats and the command line live in the companion `gnk` crate.
#![no_std]
// `!(x < bound)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod generator;
pub mod geometry;
pub mod hom;
pub mod relators;
pub mod solver;
pub mod tracer;
pub mod trajectory;
pub mod word;

pub use error::{DomainError, ParseError};
pub use generator::{
    BraidLetter, DoublePrimeGenerator, Gn2Generator, PairLetter, PlainGenerator, PrimeGenerator,
    StrandCount,
};
pub use word::{BraidWord, Letter, Word};
