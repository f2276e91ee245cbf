//! Symmetric cost accessors the construction algorithms run on.

use rayon::prelude::*;

use crate::scalar::Cost;

/// A symmetric cost function over vertices `0..len()`.
///
/// `cost(i, i)` is never queried by the algorithms in this crate.
pub trait Metric: Sync {
    type Cost: Cost;

    fn len(&self) -> usize;

    fn cost(&self, i: usize, j: usize) -> Self::Cost;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<M: Metric + ?Sized> Metric for &M {
    type Cost = M::Cost;

    fn len(&self) -> usize {
        (**self).len()
    }

    #[inline]
    fn cost(&self, i: usize, j: usize) -> M::Cost {
        (**self).cost(i, j)
    }
}

/// Dense row-major cost matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<C> {
    n: usize,
    data: Vec<C>,
}

impl<C: Cost> DistanceMatrix<C> {
    /// Materializes `metric`, computing each row in parallel.
    pub fn from_metric<M: Metric<Cost = C>>(metric: &M) -> Self {
        let n = metric.len();
        let mut data = vec![C::zero(); n * n];
        data.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j {
                    *slot = metric.cost(i, j);
                }
            }
        });
        Self { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut data = vec![C::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = f(i, j);
                data[i * n + j] = c;
                data[j * n + i] = c;
            }
        }
        Self { n, data }
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<D: Cost>(&self, f: impl Fn(C) -> D) -> DistanceMatrix<D> {
        DistanceMatrix {
            n: self.n,
            data: self.data.iter().map(|&c| f(c)).collect(),
        }
    }
}

impl<C: Cost> Metric for DistanceMatrix<C> {
    type Cost = C;

    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn cost(&self, i: usize, j: usize) -> C {
        self.data[i * self.n + j]
    }
}
