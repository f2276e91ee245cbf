//! Monte-Carlo estimate of how acceptance odds fall along a random edge order.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fragments::{PartialSolution, Verdict};
use crate::metric::Metric;

#[derive(Debug, Clone, PartialEq)]
pub struct TrendReport {
    pub trials: usize,
    /// Acceptance frequency per tenth of the shuffled list.
    pub deciles: [f64; 10],
    /// Acceptance frequency of the first list slot.
    pub first_slot: f64,
    /// Acceptance frequency over slots visited after the tour closed.
    pub after_completion: f64,
}

/// Shuffles all `n(n-1)/2` edges `trials` times and feeds each order to a
/// constraint-only constructor that accepts every feasible edge.
pub fn insertion_probability_trend<M: Metric, G: Rng + ?Sized>(metric: &M, trials: usize, rng: &mut G) -> Result<TrendReport> {
    if trials < 100 {
        return Err(Error::InvalidParameter(format!("at least 100 trials are needed, got {trials}")));
    }
    let n = metric.len();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    let total = edges.len();
    let mut accepted_at = vec![0u64; total];
    let (mut late_slots, mut late_accepts) = (0u64, 0u64);
    for _ in 0..trials {
        edges.shuffle(rng);
        let mut ps = PartialSolution::new(n);
        for (slot, &(i, j)) in edges.iter().enumerate() {
            let closed = ps.is_complete();
            let ok = ps.try_accept(i, j)? == Verdict::Ok;
            if closed {
                late_slots += 1;
                late_accepts += ok as u64;
            }
            if ok {
                accepted_at[slot] += 1;
            }
        }
    }
    let mut deciles = [0.0; 10];
    let mut counts = [0u64; 10];
    for (slot, &a) in accepted_at.iter().enumerate() {
        let d = slot * 10 / total;
        deciles[d] += a as f64;
        counts[d] += trials as u64;
    }
    for (v, &c) in deciles.iter_mut().zip(&counts) {
        *v = if c > 0 { *v / c as f64 } else { 0.0 };
    }
    Ok(TrendReport {
        trials,
        deciles,
        first_slot: accepted_at[0] as f64 / trials as f64,
        after_completion: if late_slots > 0 {
            late_accepts as f64 / late_slots as f64
        } else {
            0.0
        },
    })
}
