#![allow(dead_code)]

pub mod naive_cnn;
pub mod published;

use std::path::PathBuf;

use mlc_core::analysis::{load_corpus, Corpus};
use mlc_core::instance::{EdgeWeightType, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/tsplib")
}

/// TSPLIB instances shipped in the repository, with optima and optimal tours where present.
pub fn local_corpus() -> Corpus {
    load_corpus(data_dir().join("manifest.json")).expect("bundled manifest loads")
}

pub fn random_instance(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
    Instance::new(format!("u{seed}_n{n}"), EdgeWeightType::Euc2dReal, coords).unwrap()
}

/// Integer-grid instance with many tied distances.
pub fn grid_instance(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n)
        .map(|_| [rng.random_range(0..8) as f64, rng.random_range(0..8) as f64])
        .collect();
    Instance::new(format!("g{seed}_n{n}"), EdgeWeightType::Euc2d, coords).unwrap()
}

/// Plain disjoint-set forest with path halving.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false when `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
