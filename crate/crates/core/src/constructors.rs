//! Nearest Neighbor, Multi-Fragment and Clarke-Wright tour constructors.
//!
//! The savings completion here is the same routine the second phase of
//! [`ml_constructive`](crate::construct::ml_constructive) runs, so CW is
//! exactly that driver with an empty first phase.

use crate::error::{Error, Result};
use crate::fragments::{PartialSolution, TrackerMode, Verdict};
use crate::instance::Tour;
use crate::metric::Metric;
use crate::scalar::Cost;

/// Greedy single-fragment tour from `start`. Ties go to the smallest index.
pub fn nearest_neighbor<M: Metric>(metric: &M, start: usize) -> Result<Tour<M::Cost>> {
    let n = metric.len();
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        let mut best: Option<(usize, M::Cost)> = None;
        for (v, &seen) in visited.iter().enumerate() {
            if seen {
                continue;
            }
            let c = metric.cost(cur, v);
            if best.map_or(true, |(_, b)| c < b) {
                best = Some((v, c));
            }
        }
        let (v, _) = best.expect("an unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        cur = v;
    }
    Tour::new(metric, order)
}

/// All `n(n-1)/2` pairs `(i, j, cost)` with `i < j`.
fn all_pairs<M: Metric>(metric: &M) -> Vec<(usize, usize, M::Cost)> {
    let n = metric.len();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, metric.cost(i, j)));
        }
    }
    edges
}

/// Feeds edges in order to the partial solution, accepting every feasible one.
/// Returns the accepted edges.
pub fn greedy_pass(ps: &mut PartialSolution, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Vec<(usize, usize)>> {
    let mut accepted = Vec::new();
    for (i, j) in edges {
        if ps.is_complete() {
            break;
        }
        if ps.try_accept(i, j)? == Verdict::Ok {
            accepted.push((i, j));
        }
    }
    Ok(accepted)
}

/// Greedy edge matching over all pairs sorted by cost (ties by `(i, j)`).
pub fn multi_fragment<M: Metric>(metric: &M) -> Result<Tour<M::Cost>> {
    let mut edges = all_pairs(metric);
    edges.sort_unstable_by(|a, b| a.2.cost_cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut ps = PartialSolution::new(metric.len());
    greedy_pass(&mut ps, edges.into_iter().map(|(i, j, _)| (i, j)))?;
    Tour::new(metric, ps.tour_order()?)
}

/// Hub vertex, total distances, and the savings they induce.
#[derive(Debug, Clone)]
pub struct SavingsTable<C> {
    hub: usize,
    total_distance: Vec<C>,
}

impl<C: Cost> SavingsTable<C> {
    /// Hub = argmin of the total distance to all other vertices, smallest index on ties.
    pub fn new<M: Metric<Cost = C>>(metric: &M) -> Self {
        let n = metric.len();
        let total_distance: Vec<C> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i).map(|j| metric.cost(i, j)).sum())
            .collect();
        let mut hub = 0;
        for (i, td) in total_distance.iter().enumerate() {
            if *td < total_distance[hub] {
                hub = i;
            }
        }
        Self { hub, total_distance }
    }

    pub fn hub(&self) -> usize {
        self.hub
    }

    pub fn total_distance(&self) -> &[C] {
        &self.total_distance
    }

    /// `c_ih + c_hj - c_ij`; edges touching the hub save nothing.
    pub fn saving<M: Metric<Cost = C>>(&self, metric: &M, i: usize, j: usize) -> C {
        let h = self.hub;
        if i == h || j == h {
            return C::zero();
        }
        metric.cost(i, h) + metric.cost(h, j) - metric.cost(i, j)
    }
}

/// Completes `ps` into a tour using every edge among its free vertices,
/// sorted by descending saving, then ascending cost, then `(i, j)`.
///
/// Returns the edges accepted by this phase.
pub fn complete_with_savings<M: Metric>(
    metric: &M,
    savings: &SavingsTable<M::Cost>,
    ps: &mut PartialSolution,
) -> Result<Vec<(usize, usize)>> {
    if ps.is_complete() {
        return Ok(Vec::new());
    }
    let free = ps.free_vertices();
    let mut ld = Vec::with_capacity(free.len() * free.len().saturating_sub(1) / 2);
    for (a, &i) in free.iter().enumerate() {
        for &j in &free[a + 1..] {
            ld.push((i, j, savings.saving(metric, i, j), metric.cost(i, j)));
        }
    }
    ld.sort_unstable_by(|a, b| {
        b.2.cost_cmp(&a.2)
            .then(a.3.cost_cmp(&b.3))
            .then((a.0, a.1).cmp(&(b.0, b.1)))
    });
    let accepted = greedy_pass(ps, ld.into_iter().map(|(i, j, _, _)| (i, j)))?;
    if !ps.is_complete() {
        return Err(Error::Incomplete(format!(
            "savings pass stopped at {} of {} edges",
            ps.epoch(),
            ps.n()
        )));
    }
    Ok(accepted)
}

/// Clarke-Wright savings tour: the savings completion run from an empty solution.
pub fn clarke_wright<M: Metric>(metric: &M) -> Result<Tour<M::Cost>> {
    let savings = SavingsTable::new(metric);
    let mut ps = PartialSolution::with_mode(metric.len(), TrackerMode::EndpointMap);
    complete_with_savings(metric, &savings, &mut ps)?;
    Tour::new(metric, ps.tour_order()?)
}
