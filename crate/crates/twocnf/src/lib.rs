//! File formats, a parallel polarity census and the `twocnf` command line,
//! on top of [`twocnf_core`].

pub mod cli;
pub mod dimacs;
pub mod dot;
pub mod edgelist;
pub mod parallel;
pub mod report;

pub use twocnf_core;
