use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bench::{Manifest, ManifestEntry};
use super::held_karp::{held_karp, HELD_KARP_MAX_N};
use super::two_opt::reference_tour;
use crate::error::{Error, Result};
use crate::instance::{parse_tour, parse_tsplib, write_tour, write_tsplib, EdgeWeightType, Instance, Tour};

/// Nearest-neighbor starts behind a reference tour.
pub const REFERENCE_STARTS: usize = 10;

/// A tour paired with whether it is a proven optimum.
#[derive(Debug, Clone)]
pub struct LabeledTour {
    pub tour: Tour<f64>,
    /// `true` for Held-Karp optima, `false` for 2-opt references.
    pub exact: bool,
}

/// Random unit-square instances with exact euclidean costs, optionally
/// paired with optimal or reference tours.
#[derive(Debug, Clone)]
pub struct GeneratedDataset {
    pub seed: u64,
    pub instances: Vec<Instance>,
    /// Empty, or one tour per instance.
    pub tours: Vec<LabeledTour>,
}

/// `count` instances whose sizes are drawn uniformly from `n_min..=n_max`.
pub fn generate_instances(count: usize, n_min: usize, n_max: usize, seed: u64) -> Result<GeneratedDataset> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::InvalidParameter(format!(
            "need 3 <= n_min <= n_max, got {n_min}..={n_max}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances = (0..count)
        .map(|idx| {
            let n = rng.random_range(n_min..=n_max);
            let coords = (0..n).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
            Instance::new(format!("rand{idx:05}_n{n}"), EdgeWeightType::Euc2dReal, coords)
        })
        .collect::<Result<_>>()?;
    Ok(GeneratedDataset {
        seed,
        instances,
        tours: Vec::new(),
    })
}

/// Held-Karp optimum up to [`HELD_KARP_MAX_N`] vertices, a 2-opt reference beyond.
pub fn label_tour(inst: &Instance) -> Result<LabeledTour> {
    if inst.n() <= HELD_KARP_MAX_N {
        Ok(LabeledTour {
            tour: held_karp(inst)?,
            exact: true,
        })
    } else {
        Ok(LabeledTour {
            tour: reference_tour(inst, REFERENCE_STARTS)?,
            exact: false,
        })
    }
}

impl GeneratedDataset {
    /// Computes a tour for every instance, in parallel.
    pub fn with_tours(mut self) -> Result<Self> {
        self.tours = self.instances.par_iter().map(label_tour).collect::<Result<_>>()?;
        Ok(self)
    }

    /// Writes `<name>.tsp`, `<name>.opt.tour` or `<name>.ref.tour`, and a
    /// `manifest.json` readable by [`load_corpus`](super::load_corpus).
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        let mut entries = Vec::with_capacity(self.instances.len());
        for (idx, inst) in self.instances.iter().enumerate() {
            let file = format!("{}.tsp", inst.name());
            std::fs::write(dir.join(&file), write_tsplib(inst))?;
            let mut entry = ManifestEntry {
                name: inst.name().to_string(),
                path: Some(file),
                optimum: None,
                opt_tour: None,
                exact: None,
            };
            if let Some(lt) = self.tours.get(idx) {
                let (suffix, comment) = if lt.exact {
                    ("opt", "Held-Karp optimum")
                } else {
                    ("ref", "reference tour, best 2-opt descent")
                };
                let tour_file = format!("{}.{suffix}.tour", inst.name());
                std::fs::write(dir.join(&tour_file), write_tour(inst.name(), comment, lt.tour.order()))?;
                entry.optimum = Some(lt.tour.length());
                entry.opt_tour = Some(tour_file);
                entry.exact = Some(lt.exact);
            }
            entries.push(entry);
        }
        Manifest {
            optima: None,
            seed: Some(self.seed),
            instances: entries,
        }
        .write(dir.join("manifest.json"))
    }

    /// Reads a directory produced by [`write_dir`](Self::write_dir).
    pub fn read_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let manifest = Manifest::read(dir.join("manifest.json"))?;
        let mut instances = Vec::with_capacity(manifest.instances.len());
        let mut tours = Vec::new();
        for e in &manifest.instances {
            let file = e.path.clone().unwrap_or_else(|| format!("{}.tsp", e.name));
            let inst = parse_tsplib(&std::fs::read_to_string(dir.join(file))?)?;
            if let Some(t) = &e.opt_tour {
                let order = parse_tour(&std::fs::read_to_string(dir.join(t))?)?;
                tours.push(LabeledTour {
                    tour: Tour::new(&inst, order)?,
                    exact: e.exact.unwrap_or(true),
                });
            }
            instances.push(inst);
        }
        if !tours.is_empty() && tours.len() != instances.len() {
            return Err(Error::InvalidParameter("some dataset instances lack a tour".into()));
        }
        Ok(Self {
            seed: manifest.seed.unwrap_or(0),
            instances,
            tours,
        })
    }
}
