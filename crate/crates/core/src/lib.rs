//! Independent sets in `(r+1)`-uniform hypergraphs whose `r`-sets lie in at
//! most `d` edges: generators for the extremal constructions, exhaustive
//! oracles for small cases, the randomized cleanup-and-weighting pipeline, and
//! calculators for the associated bounds.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod hypercore;
pub mod numeric;
pub mod oracle;
pub mod rng;
pub mod shearer;

pub use error::{Error, Result};
pub use rng::Seed;
