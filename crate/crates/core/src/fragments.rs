//! Partial solutions: vertex-disjoint paths grown one edge at a time.
//!
//! Every endpoint of a fragment knows the opposite endpoint, so deciding
//! whether an edge would close a premature cycle is a single lookup. A
//! second mode walks the fragment instead; it exists to count the work of
//! the scanning tracker.

use std::cell::Cell;

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Outcome of a feasibility query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Ok,
    /// One endpoint already has two incident edges.
    DegreeViolation,
    /// Both endpoints terminate the same fragment and the tour is not ready to close.
    InnerLoop,
}

/// How same-fragment queries are answered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrackerMode {
    /// Constant-time lookup in the endpoint map.
    #[default]
    EndpointMap,
    /// Walk the fragment from one endpoint to the other.
    FragmentScan,
}

/// Read access to accepted edges, used by the renderer.
pub trait FragmentView {
    fn linked(&self, u: usize, v: usize) -> bool;
}

#[derive(Debug, Clone)]
pub struct PartialSolution {
    n: usize,
    degree: Vec<u8>,
    mate: Vec<usize>,
    adj: Vec<[usize; 2]>,
    t: usize,
    mode: TrackerMode,
    probes: Cell<u64>,
}

impl PartialSolution {
    pub fn new(n: usize) -> Self {
        Self::with_mode(n, TrackerMode::EndpointMap)
    }

    pub fn with_mode(n: usize, mode: TrackerMode) -> Self {
        Self {
            n,
            degree: vec![0; n],
            mate: (0..n).collect(),
            adj: vec![[NONE; 2]; n],
            t: 0,
            mode,
            probes: Cell::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of accepted edges.
    pub fn epoch(&self) -> usize {
        self.t
    }

    pub fn mode(&self) -> TrackerMode {
        self.mode
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v] as usize
    }

    /// Opposite endpoint of the fragment ending at `v`. An isolated vertex is
    /// its own mate; interior vertices have none.
    pub fn mate(&self, v: usize) -> Option<usize> {
        match self.degree[v] {
            0 => Some(v),
            1 => Some(self.mate[v]),
            _ => None,
        }
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied().filter(|&u| u != NONE)
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adj[i].contains(&j)
    }

    pub fn is_complete(&self) -> bool {
        self.t == self.n
    }

    /// Tracker probes performed so far.
    pub fn probes(&self) -> u64 {
        self.probes.get()
    }

    pub fn reset_probes(&self) {
        self.probes.set(0);
    }

    /// Vertices with fewer than two incident edges, ascending.
    pub fn free_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree[v] < 2).collect()
    }

    /// Number of fragments with at least one edge.
    pub fn fragment_count(&self) -> usize {
        if self.is_complete() {
            return 1;
        }
        self.degree.iter().filter(|&&d| d == 1).count() / 2
    }

    /// Accepted edges as normalized `(min, max)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.t);
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if v != NONE && u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn check_vertices(&self, i: usize, j: usize) -> Result<()> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        Ok(())
    }

    fn bump(&self, by: u64) {
        self.probes.set(self.probes.get() + by);
    }

    /// Whether degree-1 vertices `i` and `j` end the same fragment.
    fn same_fragment(&self, i: usize, j: usize) -> bool {
        match self.mode {
            TrackerMode::EndpointMap => {
                self.bump(1);
                self.mate[i] == j
            }
            TrackerMode::FragmentScan => {
                let (mut prev, mut cur) = (NONE, i);
                loop {
                    self.bump(1);
                    let next = self.adj[cur].iter().copied().find(|&u| u != NONE && u != prev);
                    match next {
                        Some(u) => {
                            prev = cur;
                            cur = u;
                        }
                        None => return cur == j,
                    }
                    if cur == i {
                        return false;
                    }
                }
            }
        }
    }

    /// Classifies the edge `(i, j)` without modifying the solution.
    pub fn check(&self, i: usize, j: usize) -> Result<Verdict> {
        self.check_vertices(i, j)?;
        if self.degree[i] == 2 || self.degree[j] == 2 {
            return Ok(Verdict::DegreeViolation);
        }
        if self.degree[i] == 1 && self.degree[j] == 1 && self.same_fragment(i, j) && self.t + 1 < self.n {
            return Ok(Verdict::InnerLoop);
        }
        Ok(Verdict::Ok)
    }

    /// Adds `(i, j)`. Fails with [`Error::Infeasible`] unless [`check`](Self::check) says OK.
    pub fn accept(&mut self, i: usize, j: usize) -> Result<()> {
        if self.check(i, j)? != Verdict::Ok {
            return Err(Error::Infeasible(i, j));
        }
        let ei = if self.degree[i] == 0 { i } else { self.mate[i] };
        let ej = if self.degree[j] == 0 { j } else { self.mate[j] };
        for (a, b) in [(i, j), (j, i)] {
            let slot = if self.adj[a][0] == NONE { 0 } else { 1 };
            self.adj[a][slot] = b;
            self.degree[a] += 1;
        }
        self.t += 1;
        if ei == j {
            // closing edge of the Hamiltonian cycle
            self.mate[i] = NONE;
            self.mate[j] = NONE;
            return Ok(());
        }
        self.mate[ei] = ej;
        self.mate[ej] = ei;
        for v in [i, j] {
            if self.degree[v] == 2 {
                self.mate[v] = NONE;
            }
        }
        Ok(())
    }

    /// Check then accept; returns the verdict and applies the edge only if OK.
    pub fn try_accept(&mut self, i: usize, j: usize) -> Result<Verdict> {
        let verdict = self.check(i, j)?;
        if verdict == Verdict::Ok {
            self.accept(i, j)?;
        }
        Ok(verdict)
    }

    /// Vertex order of the closed tour starting at 0.
    pub fn tour_order(&self) -> Result<Vec<usize>> {
        if !self.is_complete() {
            return Err(Error::Incomplete(format!("{} of {} edges accepted", self.t, self.n)));
        }
        let mut order = Vec::with_capacity(self.n);
        let (mut prev, mut cur) = (NONE, 0);
        for _ in 0..self.n {
            order.push(cur);
            let next = if self.adj[cur][0] != prev { self.adj[cur][0] } else { self.adj[cur][1] };
            prev = cur;
            cur = next;
        }
        Ok(order)
    }
}

impl FragmentView for PartialSolution {
    fn linked(&self, u: usize, v: usize) -> bool {
        self.contains_edge(u, v)
    }
}
