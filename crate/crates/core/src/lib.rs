//! Fractional covering and packing bounds for submodular set functions.
//!
//! The core is `no_std` with `alloc`. Set functions are evaluated on
//! [`Subset`] bitmasks over a ground set of at most 63 elements; weights are
//! exact rationals and comparisons of incidence sums never use floats.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counting;
pub mod detineq;
pub mod entropy;
pub mod error;
pub mod hypergraph;
pub mod lp;
pub mod random;
pub mod relent;
pub mod rational;
pub mod setfn;
pub mod subset;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, StandardCollection, Weighting, WeightingClass};
pub use rational::Rational;
pub use setfn::{GroundOrder, SetFunction};
pub use subset::Subset;
