//! Instance generation, exact and reference tours, position statistics and
//! the benchmark harness.

mod bench;
mod fixtures;
mod generate;
mod held_karp;
mod stats;
mod two_opt;

pub use bench::{
    load_corpus, run_benchmark, BenchCell, BenchInstance, BenchRow, BenchmarkConfig, BenchmarkReport, Corpus, Manifest,
    ManifestEntry, PolicySummary,
};
pub use fixtures::{rendering_fixtures, FixtureEntry, FixtureIndex, FixtureSet, FIXTURE_COUNT};
pub use generate::{generate_instances, label_tour, GeneratedDataset, LabeledTour, REFERENCE_STARTS};
pub use held_karp::{brute_force_optimum, held_karp, HELD_KARP_MAX_N};
pub use stats::{PositionCounts, PositionRow, PositionStats, PositionTally, TRACKED_POSITIONS};
pub use two_opt::{reference_tour, two_opt};

use crate::candidates::build_candidate_lists;
use crate::error::Result;
use crate::instance::{EdgeSet, Instance, Tour};
use crate::metric::Metric;

/// Exact optimum for `n <= 18`, otherwise the best local-search reference
/// from `starts` nearest-neighbor starts.
pub fn optimal_or_reference<M: Metric>(metric: &M, starts: usize) -> Result<Tour<M::Cost>> {
    if metric.len() <= HELD_KARP_MAX_N {
        held_karp(metric)
    } else {
        reference_tour(metric, starts)
    }
}

/// Position statistics of the optimal (or reference) edges over a dataset,
/// with candidate lists spanning all other vertices.
pub fn optimal_position_pdf(pairs: &[(Instance, EdgeSet)]) -> Result<PositionStats> {
    let mut tally = PositionTally::new();
    for (inst, opt) in pairs {
        let cls = build_candidate_lists(inst, inst.n() - 1)?;
        tally.add_optimal(&cls, opt);
    }
    Ok(tally.finish())
}

/// Per-position confusion statistics treating each tour in `predicted` as a
/// predictor of the optimal edges of the matching instance.
pub fn position_metrics(items: &[(&Instance, &EdgeSet, &EdgeSet)]) -> Result<PositionStats> {
    let mut tally = PositionTally::new();
    for (inst, optimal, predicted) in items {
        let cls = build_candidate_lists(*inst, inst.n() - 1)?;
        tally.add(&cls, optimal, predicted);
    }
    Ok(tally.finish())
}
