use std::collections::BTreeMap;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cnn::Network;
use crate::error::{Error, Result};
use crate::instance::{parse_tour, parse_tsplib, percentage_error, read_optima_table, EdgeSet, Instance, Tour};
use crate::solve::{Policy, PolicyInputs, SolveOptions, Solver};

/// One manifest line. Paths are relative to the manifest file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    /// Defaults to `<name>.tsp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    /// Falls back to the optima table when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_tour: Option<String>,
    /// `false` marks a local-search reference tour rather than a proven optimum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    /// Optional JSON-lines optima table, relative to the manifest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optima: Option<String>,
    /// Generator seed, for generated datasets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub instances: Vec<ManifestEntry>,
}

/// An instance ready for benchmarking.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub instance: Instance,
    pub optimum: f64,
    pub optimal_tour: Option<Tour<f64>>,
    /// Whether `optimum` and `optimal_tour` are proven optimal rather than a reference.
    pub exact: bool,
}

impl BenchInstance {
    pub fn optimal_edges(&self) -> Option<EdgeSet> {
        self.optimal_tour.as_ref().map(Tour::edge_set)
    }
}

/// Instances listed in a manifest; entries whose files are absent are skipped.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub instances: Vec<BenchInstance>,
    /// `(name, reason)` for every skipped entry.
    pub skipped: Vec<(String, String)>,
}

impl Manifest {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let f = std::io::BufWriter::new(std::fs::File::create(path)?);
        serde_json::to_writer_pretty(f, self)?;
        Ok(())
    }

    /// Loads every entry whose instance file exists under `dir`.
    pub fn load(&self, dir: &Path) -> Result<Corpus> {
        let table = match &self.optima {
            Some(p) => read_optima_table(BufReader::new(std::fs::File::open(dir.join(p))?))?,
            None => BTreeMap::new(),
        };
        let mut corpus = Corpus::default();
        for e in &self.instances {
            let path: PathBuf = dir.join(e.path.clone().unwrap_or_else(|| format!("{}.tsp", e.name)));
            if !path.exists() {
                corpus.skipped.push((e.name.clone(), format!("{} not found", path.display())));
                continue;
            }
            let Some(optimum) = e.optimum.or_else(|| table.get(&e.name).copied()) else {
                corpus.skipped.push((e.name.clone(), "no reference optimum".into()));
                continue;
            };
            let instance = parse_tsplib(&std::fs::read_to_string(&path)?)?;
            let optimal_tour = match &e.opt_tour {
                Some(t) if dir.join(t).exists() => {
                    let order = parse_tour(&std::fs::read_to_string(dir.join(t))?)?;
                    Some(Tour::new(&instance, order)?)
                }
                _ => None,
            };
            corpus.instances.push(BenchInstance {
                instance,
                optimum,
                optimal_tour,
                exact: e.exact.unwrap_or(true),
            });
        }
        Ok(corpus)
    }
}

/// Reads a manifest and loads its corpus relative to the manifest's directory.
pub fn load_corpus(manifest_path: impl AsRef<Path>) -> Result<Corpus> {
    let path = manifest_path.as_ref();
    let manifest = Manifest::read(path)?;
    manifest.load(path.parent().unwrap_or(Path::new(".")))
}

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub policies: Vec<Policy>,
    pub solve: SolveOptions,
    /// Worker threads; 0 lets the runtime decide.
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchCell {
    /// Percentage error; for AE the mean over runs, for BE the minimum.
    pub gap: Option<f64>,
    pub length: Option<f64>,
    pub seconds: f64,
    /// Why the cell is empty, if it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub optimum: f64,
    pub cells: Vec<BenchCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicySummary {
    pub policy: String,
    pub instances: usize,
    pub mean: f64,
    pub std: f64,
    /// Instances where this policy reached the smallest gap (ties count for all).
    pub best_count: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub policies: Vec<String>,
    pub rows: Vec<BenchRow>,
    pub summary: Vec<PolicySummary>,
}

fn run_one(b: &BenchInstance, cfg: &BenchmarkConfig, network: Option<&Network<f32>>) -> Result<BenchRow> {
    let solver = Solver::new(&b.instance, cfg.solve)?;
    let optimal = b.optimal_edges();
    let inputs = PolicyInputs {
        optimal: optimal.as_ref(),
        network,
    };
    let mut cells = Vec::with_capacity(cfg.policies.len());
    for &p in &cfg.policies {
        let started = Instant::now();
        let outcome = solver.solve(p, inputs);
        let seconds = started.elapsed().as_secs_f64();
        let cell = match outcome {
            Ok(sol) => {
                let gaps = sol
                    .run_lengths
                    .iter()
                    .map(|&l| percentage_error(l, b.optimum))
                    .collect::<Result<Vec<_>>>()?;
                let gap = match p {
                    Policy::AverageEmpirical => gaps.iter().sum::<f64>() / gaps.len() as f64,
                    Policy::BestEmpirical => gaps.iter().copied().fold(f64::INFINITY, f64::min),
                    _ => percentage_error(sol.tour.length(), b.optimum)?,
                };
                BenchCell {
                    gap: Some(gap),
                    length: Some(sol.tour.length()),
                    seconds,
                    note: None,
                }
            }
            Err(e @ (Error::MissingOptimalTour | Error::MissingWeights | Error::NoCoordinates)) => BenchCell {
                gap: None,
                length: None,
                seconds,
                note: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        cells.push(cell);
    }
    Ok(BenchRow {
        instance: b.instance.name().to_string(),
        n: b.instance.n(),
        optimum: b.optimum,
        cells,
    })
}

/// Runs every policy on every instance, fanning out across instances.
pub fn run_benchmark(corpus: &[BenchInstance], cfg: &BenchmarkConfig, network: Option<&Network<f32>>) -> Result<BenchmarkReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let rows: Vec<BenchRow> = pool.install(|| {
        corpus
            .par_iter()
            .map(|b| run_one(b, cfg, network))
            .collect::<Result<_>>()
    })?;
    let summary = summarize(&cfg.policies, &rows);
    Ok(BenchmarkReport {
        policies: cfg.policies.iter().map(|p| p.name().to_string()).collect(),
        rows,
        summary,
    })
}

fn summarize(policies: &[Policy], rows: &[BenchRow]) -> Vec<PolicySummary> {
    let mut best = vec![0usize; policies.len()];
    for row in rows {
        let min = row.cells.iter().filter_map(|c| c.gap).fold(f64::INFINITY, f64::min);
        for (b, c) in best.iter_mut().zip(&row.cells) {
            if c.gap == Some(min) {
                *b += 1;
            }
        }
    }
    policies
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let gaps: Vec<f64> = rows.iter().filter_map(|r| r.cells[k].gap).collect();
            let count = gaps.len();
            let mean = if count > 0 { gaps.iter().sum::<f64>() / count as f64 } else { f64::NAN };
            let std = if count > 1 {
                (gaps.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
            } else {
                0.0
            };
            PolicySummary {
                policy: p.name().to_string(),
                instances: count,
                mean,
                std,
                best_count: best[k],
                seconds: rows.iter().map(|r| r.cells[k].seconds).sum(),
            }
        })
        .collect()
}

impl BenchmarkReport {
    fn column(&self, policy: Policy) -> Option<usize> {
        self.policies.iter().position(|p| p == policy.name())
    }

    /// Gap of `policy` on `instance`.
    pub fn gap(&self, instance: &str, policy: Policy) -> Option<f64> {
        let k = self.column(policy)?;
        self.rows.iter().find(|r| r.instance == instance)?.cells[k].gap
    }

    pub fn summary_of(&self, policy: Policy) -> Option<&PolicySummary> {
        self.summary.iter().find(|s| s.policy == policy.name())
    }

    /// Instance x policy gap matrix; empty cells stay blank.
    pub fn write_gap_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "instance,n,optimum,{}", self.policies.join(","))?;
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(|c| c.gap.map(|g| format!("{g:.3}")).unwrap_or_default()).collect();
            writeln!(w, "{},{},{},{}", r.instance, r.n, r.optimum, cells.join(","))?;
        }
        Ok(())
    }

    /// Instance x policy wall-clock seconds.
    pub fn write_time_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "instance,n,{}", self.policies.join(","))?;
        for r in &self.rows {
            let cells: Vec<String> = r.cells.iter().map(|c| format!("{:.4}", c.seconds)).collect();
            writeln!(w, "{},{},{}", r.instance, r.n, cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: impl Write) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }
}
