//! The two-phase constructive driver.
//!
//! Phase one walks the promising list `L_P`. Every edge that passes the
//! degree and inner-loop checks is offered to a [`DecisionTaker`], and
//! accepted edges enter the partial solution. Phase two completes the
//! solution with Clarke-Wright savings over all edges between free vertices.

mod policies;
mod trend;

pub use policies::{
    Always, Empirical, First, ModelPolicy, Oracle, RejectAll, Second, EMPIRICAL_P1, EMPIRICAL_P2,
};
pub use trend::{insertion_probability_trend, TrendReport};

use crate::candidates::{
    build_candidate_lists, build_promising_list, effective_k, CandidateLists, PromisingEntry, PromisingList,
    DEFAULT_K, DEFAULT_M,
};
use crate::constructors::{complete_with_savings, SavingsTable};
use crate::error::{Error, Result};
use crate::fragments::{PartialSolution, TrackerMode, Verdict};
use crate::instance::Tour;
use crate::metric::Metric;
use crate::scalar::Cost;

/// What a decision-taker sees when asked about one `L_P` entry.
pub struct Query<'a, C> {
    pub entry: &'a PromisingEntry<C>,
    /// Index of the entry in `L_P`.
    pub index: usize,
    pub partial: &'a PartialSolution,
    pub candidates: &'a CandidateLists<C>,
}

/// Accept/reject policy for feasible phase-one edges.
pub trait DecisionTaker<C> {
    fn decide(&mut self, query: &Query<'_, C>) -> Result<bool>;
}

impl<C, D: DecisionTaker<C> + ?Sized> DecisionTaker<C> for &mut D {
    fn decide(&mut self, query: &Query<'_, C>) -> Result<bool> {
        (**self).decide(query)
    }
}

impl<C, D: DecisionTaker<C> + ?Sized> DecisionTaker<C> for Box<D> {
    fn decide(&mut self, query: &Query<'_, C>) -> Result<bool> {
        (**self).decide(query)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Candidate list length, clamped to `n - 1`.
    pub k: usize,
    /// Entries per candidate list copied into `L_P`.
    pub m: usize,
    pub tracker: TrackerMode,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            k: DEFAULT_K,
            m: DEFAULT_M,
            tracker: TrackerMode::EndpointMap,
        }
    }
}

/// One phase-one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    pub i: usize,
    pub j: usize,
    pub position: usize,
    pub verdict: Verdict,
    /// `None` when the constraints rejected the edge before the policy was asked.
    pub decision: Option<bool>,
    /// Accepted edges before this step.
    pub epoch: usize,
}

impl TraceRecord {
    pub fn accepted(&self) -> bool {
        self.decision == Some(true)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructionTrace {
    /// Phase-one records in `L_P` order.
    pub records: Vec<TraceRecord>,
    /// Edges accepted in phase one.
    pub phase_one_accepted: usize,
    /// Edges added by the savings completion, in insertion order.
    pub phase_two: Vec<(usize, usize)>,
    pub hub: usize,
    /// Tracker probes over the whole construction.
    pub probes: u64,
}

#[derive(Debug, Clone)]
pub struct Construction<C> {
    pub tour: Tour<C>,
    pub trace: ConstructionTrace,
}

/// Candidate lists, `L_P` and savings for one instance, reusable across policies.
#[derive(Debug, Clone)]
pub struct Prepared<C> {
    pub candidates: CandidateLists<C>,
    pub promising: PromisingList<C>,
    pub savings: SavingsTable<C>,
    pub tracker: TrackerMode,
}

impl<C: Cost> Prepared<C> {
    pub fn new<M: Metric<Cost = C>>(metric: &M, opts: &ConstructOptions) -> Result<Self> {
        let k = effective_k(opts.k, metric.len());
        if opts.m == 0 || opts.m > k {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= m <= k, got m = {} and k = {k}",
                opts.m
            )));
        }
        let candidates = build_candidate_lists(metric, k)?;
        let promising = build_promising_list(&candidates, opts.m)?;
        Ok(Self {
            candidates,
            promising,
            savings: SavingsTable::new(metric),
            tracker: opts.tracker,
        })
    }

    /// Runs both phases with `dt`.
    pub fn run<M, D>(&self, metric: &M, mut dt: D) -> Result<Construction<C>>
    where
        M: Metric<Cost = C>,
        D: DecisionTaker<C>,
    {
        let n = metric.len();
        let mut ps = PartialSolution::with_mode(n, self.tracker);
        let mut trace = ConstructionTrace {
            hub: self.savings.hub(),
            ..Default::default()
        };
        for (index, entry) in self.promising.entries().iter().enumerate() {
            let epoch = ps.epoch();
            let verdict = ps.check(entry.i, entry.j)?;
            let decision = if verdict == Verdict::Ok {
                let q = Query {
                    entry,
                    index,
                    partial: &ps,
                    candidates: &self.candidates,
                };
                Some(dt.decide(&q)?)
            } else {
                None
            };
            if decision == Some(true) {
                ps.accept(entry.i, entry.j)?;
            }
            trace.records.push(TraceRecord {
                i: entry.i,
                j: entry.j,
                position: entry.position,
                verdict,
                decision,
                epoch,
            });
        }
        trace.phase_one_accepted = ps.epoch();
        trace.phase_two = complete_with_savings(metric, &self.savings, &mut ps)?;
        trace.probes = ps.probes();
        let tour = Tour::new(metric, ps.tour_order()?)?;
        Ok(Construction { tour, trace })
    }
}

/// Builds the lists for `metric` and runs both phases with `dt`.
pub fn ml_constructive<M, D>(metric: &M, dt: D, opts: &ConstructOptions) -> Result<Construction<M::Cost>>
where
    M: Metric,
    D: DecisionTaker<M::Cost>,
{
    Prepared::new(metric, opts)?.run(metric, dt)
}
