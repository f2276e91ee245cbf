use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::scalar::Cost;

/// Normalized undirected edge key `(min, max)`.
#[inline]
pub fn edge_key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// A Hamiltonian cycle: a permutation of `0..n` plus its cyclic length.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour<C = f64> {
    order: Vec<usize>,
    length: C,
}

impl<C: Cost> Tour<C> {
    /// Validates `order` as a permutation of `0..metric.len()` and measures it.
    pub fn new<M: Metric<Cost = C>>(metric: &M, order: Vec<usize>) -> Result<Self> {
        let length = tour_length(metric, &order)?;
        Ok(Self { order, length })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn length(&self) -> C {
        self.length
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Cyclic edges `(order[t], order[t+1 mod n])`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |t| (self.order[t], self.order[(t + 1) % n]))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// The same cycle traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self {
            order,
            length: self.length,
        }
    }
}

pub(crate) fn check_permutation(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::NotAPermutation(format!(
            "expected {n} vertices, got {}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::NotAPermutation(format!("vertex {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPermutation(format!("vertex {v} repeated")));
        }
    }
    Ok(())
}

/// Cyclic sum of costs along `order`, which must be a permutation.
pub fn tour_length<M: Metric>(metric: &M, order: &[usize]) -> Result<M::Cost> {
    check_permutation(metric.len(), order)?;
    let n = order.len();
    Ok((0..n).map(|t| metric.cost(order[t], order[(t + 1) % n])).sum())
}

/// Set of undirected edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet(HashSet<(usize, usize)>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        self.0.insert(edge_key(i, j))
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.0.contains(&edge_key(i, j))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    /// Edges sorted lexicographically, for deterministic output.
    pub fn sorted(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_unstable();
        v
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<(usize, usize)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (i, j) in iter {
            s.insert(i, j);
        }
        s
    }
}
