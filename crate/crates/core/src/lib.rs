//! Reduced 2-CNF sentences, their support graphs, and the graph-structural
//! test for whether a simple graph can carry an unsatisfiable simple 2-CNF.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod enumerate;
pub mod fixtures;
pub mod formula;
pub mod graph;
pub mod iso;
pub mod minors;
pub mod sat;
pub mod simplify;
pub mod witness;
