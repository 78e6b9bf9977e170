//! Parallel drivers over the core routines.

use anyhow::Context;
use kplane::search::{domain_values, search_partition, Classification, Domain, HyperovalRecord, TypeTag};
use kplane::Plane;
use rayon::prelude::*;

pub fn pool(workers: usize) -> anyhow::Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().context("cannot start worker pool")
}

/// Exhaustive search split by leading coefficient across `workers` threads.
/// The result does not depend on the worker count.
pub fn parallel_search(plane: &Plane, tag: TypeTag, domain: Domain, workers: usize) -> anyhow::Result<Vec<HyperovalRecord>> {
    kplane::search::check_domain(plane.n(), domain)?;
    let leads = domain_values(plane.ctx(), domain);
    let id = plane.presemifield().id();
    let merged = pool(workers)?.install(|| {
        leads
            .par_iter()
            .map(|&lead| search_partition(plane, tag, domain, lead))
            .try_reduce(|| Classification::new(id, tag), |mut a, b| {
                a.merge(b);
                Ok(a)
            })
    })?;
    Ok(merged.records())
}
