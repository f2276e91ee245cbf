//! Named policies and a solver that runs any of them on one instance.

use std::fmt;
use std::str::FromStr;

use crate::candidates::{DEFAULT_K, DEFAULT_M};
use crate::cnn::{Network, DEFAULT_THRESHOLD};
use crate::construct::{
    Always, ConstructOptions, ConstructionTrace, DecisionTaker, Empirical, First, ModelPolicy, Oracle, Prepared,
    RejectAll, Second,
};
use crate::constructors::{clarke_wright, multi_fragment, nearest_neighbor};
use crate::error::{Error, Result};
use crate::fragments::TrackerMode;
use crate::instance::{EdgeSet, Instance, Tour};
use crate::metric::DistanceMatrix;

/// Number of seeded runs behind the AE and BE columns.
pub const EMPIRICAL_RUNS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    /// Multi-Fragment.
    Mf,
    /// Clarke-Wright savings.
    Cw,
    /// Nearest Neighbor.
    Nn,
    /// Accept position-1 entries.
    First,
    /// Accept position-2 entries.
    Second,
    /// Accept every feasible entry.
    Always,
    /// Mean over seeded empirical runs.
    AverageEmpirical,
    /// Best of the seeded empirical runs.
    BestEmpirical,
    /// CNN with a confidence threshold.
    ModelConfident,
    /// Optimal-tour oracle.
    SuperConfident,
}

impl Policy {
    pub const ALL: [Policy; 10] = [
        Policy::Mf,
        Policy::Cw,
        Policy::Nn,
        Policy::First,
        Policy::Second,
        Policy::Always,
        Policy::AverageEmpirical,
        Policy::BestEmpirical,
        Policy::ModelConfident,
        Policy::SuperConfident,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Policy::Mf => "mf",
            Policy::Cw => "cw",
            Policy::Nn => "nn",
            Policy::First => "f",
            Policy::Second => "s",
            Policy::Always => "y",
            Policy::AverageEmpirical => "ae",
            Policy::BestEmpirical => "be",
            Policy::ModelConfident => "ml-c",
            Policy::SuperConfident => "ml-sc",
        }
    }

    pub fn needs_weights(self) -> bool {
        self == Policy::ModelConfident
    }

    pub fn needs_optimal_tour(self) -> bool {
        self == Policy::SuperConfident
    }

    /// Whether the policy reads the optimal tour to make decisions.
    pub fn is_oracle(self) -> bool {
        self.needs_optimal_tour()
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Policy::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or(Error::UnknownPolicy(s))
    }
}

/// Parses a comma-separated policy list such as `mf,cw,f`.
pub fn parse_policies(list: &str) -> Result<Vec<Policy>> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub k: usize,
    pub m: usize,
    pub threshold: f64,
    /// Seed of the first empirical run.
    pub seed: u64,
    pub empirical_runs: usize,
    pub nn_start: usize,
    pub tracker: TrackerMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            k: DEFAULT_K,
            m: DEFAULT_M,
            threshold: DEFAULT_THRESHOLD,
            seed: 0,
            empirical_runs: EMPIRICAL_RUNS,
            nn_start: 0,
            tracker: TrackerMode::EndpointMap,
        }
    }
}

impl SolveOptions {
    pub fn construct(&self) -> ConstructOptions {
        ConstructOptions {
            k: self.k,
            m: self.m,
            tracker: self.tracker,
        }
    }
}

/// Optional inputs some policies require.
#[derive(Debug, Clone, Copy, Default)]
pub struct PolicyInputs<'a> {
    pub optimal: Option<&'a EdgeSet>,
    pub network: Option<&'a Network<f32>>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub tour: Tour<f64>,
    /// Phase-one trace for policies that run the two-phase driver.
    pub trace: Option<ConstructionTrace>,
    /// Lengths of every seeded run, for the empirical policies.
    pub run_lengths: Vec<f64>,
}

/// Precomputed costs and lists for one instance; runs any policy.
pub struct Solver<'a> {
    instance: &'a Instance,
    matrix: DistanceMatrix<f64>,
    prepared: Prepared<f64>,
    opts: SolveOptions,
}

impl<'a> Solver<'a> {
    pub fn new(instance: &'a Instance, opts: SolveOptions) -> Result<Self> {
        let matrix = DistanceMatrix::from_metric(instance);
        let prepared = Prepared::new(&matrix, &opts.construct())?;
        Ok(Self {
            instance,
            matrix,
            prepared,
            opts,
        })
    }

    pub fn matrix(&self) -> &DistanceMatrix<f64> {
        &self.matrix
    }

    pub fn prepared(&self) -> &Prepared<f64> {
        &self.prepared
    }

    fn run<D: DecisionTaker<f64>>(&self, dt: D) -> Result<Solution> {
        let c = self.prepared.run(&self.matrix, dt)?;
        Ok(Solution {
            tour: c.tour,
            trace: Some(c.trace),
            run_lengths: Vec::new(),
        })
    }

    fn plain(tour: Tour<f64>) -> Solution {
        Solution {
            tour,
            trace: None,
            run_lengths: Vec::new(),
        }
    }

    pub fn solve(&self, policy: Policy, inputs: PolicyInputs<'_>) -> Result<Solution> {
        let m = &self.matrix;
        match policy {
            Policy::Mf => Ok(Self::plain(multi_fragment(m)?)),
            Policy::Cw => Ok(Self::plain(clarke_wright(m)?)),
            Policy::Nn => Ok(Self::plain(nearest_neighbor(m, self.opts.nn_start)?)),
            Policy::First => self.run(First),
            Policy::Second => self.run(Second),
            Policy::Always => self.run(Always),
            Policy::AverageEmpirical | Policy::BestEmpirical => {
                let runs = self.opts.empirical_runs.max(1);
                let mut solutions = (0..runs as u64)
                    .map(|r| self.run(Empirical::new(self.opts.seed.wrapping_add(r))))
                    .collect::<Result<Vec<_>>>()?;
                let lengths: Vec<f64> = solutions.iter().map(|s| s.tour.length()).collect();
                let pick = if policy == Policy::BestEmpirical {
                    (0..runs).fold(0, |b, i| if lengths[i] < lengths[b] { i } else { b })
                } else {
                    0
                };
                let mut out = solutions.swap_remove(pick);
                out.run_lengths = lengths;
                Ok(out)
            }
            Policy::SuperConfident => {
                let opt = inputs.optimal.ok_or(Error::MissingOptimalTour)?;
                self.run(Oracle::new(opt.clone()))
            }
            Policy::ModelConfident => {
                let net = inputs.network.ok_or(Error::MissingWeights)?;
                if self.instance.coords().is_empty() {
                    return Err(Error::NoCoordinates);
                }
                self.run(ModelPolicy::new(net, self.instance.coords(), self.opts.threshold))
            }
        }
    }

    /// Reject-all run of the two-phase driver (the savings phase alone).
    pub fn solve_reject_all(&self) -> Result<Solution> {
        self.run(RejectAll)
    }
}
