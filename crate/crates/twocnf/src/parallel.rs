//! Polarity census spread over a thread pool.

use rayon::prelude::*;
use twocnf_core::enumerate::{CensusReport, CensusTally, EnumerateError, PolaritySpace};
use twocnf_core::graph::SimpleGraph;
use twocnf_core::sat::DenseSolver;

const CHUNK: u64 = 1 << 12;

/// Same result as [`twocnf_core::enumerate::census`], counted in parallel.
/// `threads = None` uses the global pool.
pub fn census_parallel(g: &SimpleGraph, cap: usize, threads: Option<usize>) -> Result<CensusReport, EnumerateError> {
    let space = PolaritySpace::new(g, cap)?;
    let count = || {
        let chunks = space.size().div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map_init(DenseSolver::new, |solver, c| {
                let start = c * CHUNK;
                space.tally(start..(start + CHUNK).min(space.size()), solver)
            })
            .reduce(CensusTally::default, CensusTally::merge)
    };
    let tally = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(count),
        None => count(),
    };
    Ok(space.report(g, tally))
}
