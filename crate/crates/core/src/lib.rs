//! Modular (near-)one-factorizations of complete graphs.
//!
//! The crate builds the factors `F_k` of `K_n` whose edges are the pairs
//! summing to `k` modulo `n`, decides which pairs of factors are perfect,
//! builds the product factors `D_{k,l}` of `K_{st}`, and checks that the two
//! resulting lower bounds on the number of perfect pairs coincide. A small
//! exhaustive search provides exact values for tiny orders.

pub mod cli;
pub mod equivalence;
pub mod error;
pub mod factors;
pub mod numtheory;
pub mod oracle;
pub mod pairing;
pub mod product;
pub mod render;

pub use error::{Error, Result};
