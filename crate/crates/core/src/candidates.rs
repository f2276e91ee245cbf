//! Per-vertex candidate lists and the promising list `L_P`.
//!
//! A candidate list holds the `k` nearest vertices of its owner. The
//! promising list collects the first `m` entries of every candidate list,
//! keeps each undirected edge once at its best position, and sorts the
//! result by position and then by cost.

use std::collections::HashMap;
use std::io::Write;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::edge_key;
use crate::metric::Metric;
use crate::scalar::Cost;

/// Candidate list length used when the caller does not choose one.
pub const DEFAULT_K: usize = 30;
/// Number of leading candidate entries per vertex copied into `L_P`.
pub const DEFAULT_M: usize = 2;

/// `min(k, n - 1)`, the capacity actually usable on an `n`-vertex instance.
pub fn effective_k(k: usize, n: usize) -> usize {
    k.min(n.saturating_sub(1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateList<C> {
    owner: usize,
    neighbors: Vec<(usize, C)>,
}

impl<C: Cost> CandidateList<C> {
    pub fn owner(&self) -> usize {
        self.owner
    }

    /// `(vertex, cost)` pairs, nearest first.
    pub fn neighbors(&self) -> &[(usize, C)] {
        &self.neighbors
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    /// 1-based rank of `v` in this list.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.neighbors.iter().position(|&(u, _)| u == v).map(|p| p + 1)
    }
}

/// Candidate lists for every vertex of one instance.
#[derive(Debug, Clone)]
pub struct CandidateLists<C> {
    k: usize,
    lists: Vec<CandidateList<C>>,
    evaluations: u64,
}

impl<C: Cost> CandidateLists<C> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: usize) -> &CandidateList<C> {
        &self.lists[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = &CandidateList<C>> {
        self.lists.iter()
    }

    /// Number of pair costs evaluated while building the lists.
    pub fn cost_evaluations(&self) -> u64 {
        self.evaluations
    }
}

impl<C> std::ops::Index<usize> for CandidateLists<C> {
    type Output = CandidateList<C>;

    fn index(&self, v: usize) -> &CandidateList<C> {
        &self.lists[v]
    }
}

fn by_cost_then_index<C: Cost>(a: &(usize, C), b: &(usize, C)) -> std::cmp::Ordering {
    a.1.cost_cmp(&b.1).then(a.0.cmp(&b.0))
}

/// Builds the `k` nearest neighbours of every vertex. Rows are independent
/// and computed in parallel.
pub fn build_candidate_lists<M: Metric>(metric: &M, k: usize) -> Result<CandidateLists<M::Cost>> {
    let n = metric.len();
    if k == 0 || k + 1 > n {
        return Err(Error::InvalidParameter(format!(
            "candidate list length k = {k} must lie in 1..={}",
            n.saturating_sub(1)
        )));
    }
    let evaluations = AtomicU64::new(0);
    let lists = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row: Vec<(usize, M::Cost)> =
                (0..n).filter(|&j| j != i).map(|j| (j, metric.cost(i, j))).collect();
            evaluations.fetch_add(row.len() as u64, AtomicOrdering::Relaxed);
            if k < row.len() {
                row.select_nth_unstable_by(k - 1, by_cost_then_index);
                row.truncate(k);
            }
            row.sort_unstable_by(by_cost_then_index);
            CandidateList {
                owner: i,
                neighbors: row,
            }
        })
        .collect();
    Ok(CandidateLists {
        k,
        lists,
        evaluations: evaluations.into_inner(),
    })
}

/// One `L_P` item: edge `(i, j)` where `j` sits at 1-based `position` in `CL[i]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PromisingEntry<C> {
    pub i: usize,
    pub j: usize,
    pub position: usize,
    pub cost: C,
}

impl<C> PromisingEntry<C> {
    pub fn key(&self) -> (usize, usize) {
        edge_key(self.i, self.j)
    }
}

#[derive(Debug, Clone)]
pub struct PromisingList<C> {
    m: usize,
    entries: Vec<PromisingEntry<C>>,
}

impl<C: Cost> PromisingList<C> {
    /// An `L_P` with no entries.
    pub fn empty() -> Self {
        Self {
            m: 0,
            entries: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[PromisingEntry<C>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes `i,j,position,cost` rows with a header.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "i,j,position,cost")?;
        for e in &self.entries {
            writeln!(w, "{},{},{},{}", e.i, e.j, e.position, e.cost.as_f64())?;
        }
        Ok(())
    }
}

/// Collects the first `m` entries of every candidate list into `L_P`.
///
/// An edge reachable from both endpoints is kept once, at its smaller
/// position; at equal positions the smaller owner wins. Entries are then
/// ordered by position, cost and the normalized edge key.
pub fn build_promising_list<C: Cost>(cls: &CandidateLists<C>, m: usize) -> Result<PromisingList<C>> {
    if m == 0 || m > cls.k() {
        return Err(Error::InvalidParameter(format!(
            "promising list depth m = {m} must lie in 1..={}",
            cls.k()
        )));
    }
    let mut best: HashMap<(usize, usize), PromisingEntry<C>> = HashMap::with_capacity(m * cls.n());
    for list in cls.iter() {
        for (p, &(j, cost)) in list.neighbors().iter().take(m).enumerate() {
            let entry = PromisingEntry {
                i: list.owner(),
                j,
                position: p + 1,
                cost,
            };
            best.entry(entry.key())
                .and_modify(|kept| {
                    if (entry.position, entry.i) < (kept.position, kept.i) {
                        *kept = entry;
                    }
                })
                .or_insert(entry);
        }
    }
    let mut entries: Vec<_> = best.into_values().collect();
    entries.sort_unstable_by(|a, b| {
        a.position
            .cmp(&b.position)
            .then(a.cost.cost_cmp(&b.cost))
            .then(a.key().cmp(&b.key()))
    });
    Ok(PromisingList { m, entries })
}
