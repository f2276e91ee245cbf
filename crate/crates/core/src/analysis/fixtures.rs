//! A fixed set of context images shared with external training code.
//!
//! The set is a pure function of its seed: small generated instances, their
//! Held-Karp tours, and evenly spaced `L_P` entries rendered with the offline
//! replay as third channel. Writing it out gives a training implementation
//! something to compare its own renders and logits against.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::generate::{generate_instances, GeneratedDataset};
use crate::candidates::{build_candidate_lists, build_promising_list, effective_k, DEFAULT_K, DEFAULT_M};
use crate::error::Result;
use crate::render::{render_context, ContextImage, OfflineReplay, RenderConfig};

pub const FIXTURE_COUNT: usize = 32;
const FIXTURE_INSTANCES: usize = 4;
const FIXTURE_N: (usize, usize) = (12, 18);

/// Description of one fixture image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub instance: String,
    /// Index of the rendered entry in `L_P`.
    pub index: usize,
    pub i: usize,
    pub j: usize,
    pub position: usize,
    /// Whether `(i, j)` is in the instance's optimal tour.
    pub label: bool,
    /// Raw float32 blob, relative to the fixture directory.
    pub blob: String,
}

/// Parameters and entries written to `fixtures.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureIndex {
    pub seed: u64,
    pub k: usize,
    pub m: usize,
    pub size: usize,
    pub mark_radius: usize,
    pub margin: f64,
    pub entries: Vec<FixtureEntry>,
}

#[derive(Debug, Clone)]
pub struct FixtureSet {
    pub dataset: GeneratedDataset,
    pub index: FixtureIndex,
    pub images: Vec<ContextImage>,
}

/// Builds the [`FIXTURE_COUNT`]-image set for `seed`.
pub fn rendering_fixtures(seed: u64) -> Result<FixtureSet> {
    let dataset = generate_instances(FIXTURE_INSTANCES, FIXTURE_N.0, FIXTURE_N.1, seed)?.with_tours()?;
    let cfg = RenderConfig::default();
    let per_instance = FIXTURE_COUNT / FIXTURE_INSTANCES;
    let mut entries = Vec::with_capacity(FIXTURE_COUNT);
    let mut images = Vec::with_capacity(FIXTURE_COUNT);
    for (inst, labeled) in dataset.instances.iter().zip(&dataset.tours) {
        let optimal = labeled.tour.edge_set();
        let cls = build_candidate_lists(inst, effective_k(DEFAULT_K, inst.n()))?;
        let lp = build_promising_list(&cls, DEFAULT_M)?;
        for s in 0..per_instance {
            let index = s * lp.len() / per_instance;
            let e = lp.entries()[index];
            let replay = OfflineReplay::new(&lp, &optimal, index);
            images.push(render_context(inst.coords(), &cls, &replay, e.i, e.j, &cfg)?);
            entries.push(FixtureEntry {
                instance: inst.name().to_string(),
                index,
                i: e.i,
                j: e.j,
                position: e.position,
                label: optimal.contains(e.i, e.j),
                blob: format!("fixture_{:02}.f32", entries.len()),
            });
        }
    }
    Ok(FixtureSet {
        dataset,
        index: FixtureIndex {
            seed,
            k: DEFAULT_K,
            m: DEFAULT_M,
            size: cfg.size,
            mark_radius: cfg.mark_radius,
            margin: cfg.margin,
            entries,
        },
        images,
    })
}

impl FixtureSet {
    /// Writes the instances and tours, one blob per image, and `fixtures.json`.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        self.dataset.write_dir(dir)?;
        for (e, img) in self.index.entries.iter().zip(&self.images) {
            std::fs::write(dir.join(&e.blob), img.to_blob())?;
        }
        let f = std::io::BufWriter::new(std::fs::File::create(dir.join("fixtures.json"))?);
        serde_json::to_writer_pretty(f, &self.index)?;
        Ok(())
    }
}
