//! Decision-takers: position rules, the empirical coin flip, the optimal-tour
//! oracle and the CNN model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DecisionTaker, Query};
use crate::cnn::Network;
use crate::error::Result;
use crate::instance::EdgeSet;
use crate::render::{render_context, RenderConfig};
use crate::scalar::{Cost, Real};

/// Acceptance probability of a position-1 edge under the empirical rule.
pub const EMPIRICAL_P1: f64 = 0.886;
/// Acceptance probability of a position-2 edge under the empirical rule.
pub const EMPIRICAL_P2: f64 = 0.512;

/// Accepts exactly the position-1 entries.
#[derive(Debug, Clone, Copy, Default)]
pub struct First;

/// Accepts exactly the position-2 entries.
#[derive(Debug, Clone, Copy, Default)]
pub struct Second;

/// Accepts every feasible entry.
#[derive(Debug, Clone, Copy, Default)]
pub struct Always;

/// Rejects everything, leaving the work to the savings phase.
#[derive(Debug, Clone, Copy, Default)]
pub struct RejectAll;

impl<C> DecisionTaker<C> for First {
    fn decide(&mut self, q: &Query<'_, C>) -> Result<bool> {
        Ok(q.entry.position == 1)
    }
}

impl<C> DecisionTaker<C> for Second {
    fn decide(&mut self, q: &Query<'_, C>) -> Result<bool> {
        Ok(q.entry.position == 2)
    }
}

impl<C> DecisionTaker<C> for Always {
    fn decide(&mut self, _: &Query<'_, C>) -> Result<bool> {
        Ok(true)
    }
}

impl<C> DecisionTaker<C> for RejectAll {
    fn decide(&mut self, _: &Query<'_, C>) -> Result<bool> {
        Ok(false)
    }
}

/// Bernoulli acceptance with a per-position probability. Entries beyond
/// position 2 are rejected.
#[derive(Debug, Clone)]
pub struct Empirical {
    p1: f64,
    p2: f64,
    rng: ChaCha8Rng,
}

impl Empirical {
    pub fn new(seed: u64) -> Self {
        Self::with_probabilities(EMPIRICAL_P1, EMPIRICAL_P2, seed)
    }

    pub fn with_probabilities(p1: f64, p2: f64, seed: u64) -> Self {
        Self {
            p1,
            p2,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl<C> DecisionTaker<C> for Empirical {
    fn decide(&mut self, q: &Query<'_, C>) -> Result<bool> {
        let p = match q.entry.position {
            1 => self.p1,
            2 => self.p2,
            _ => return Ok(false),
        };
        Ok(self.rng.random::<f64>() < p)
    }
}

/// Accepts exactly the edges of a known optimal tour.
#[derive(Debug, Clone)]
pub struct Oracle {
    edges: EdgeSet,
}

impl Oracle {
    pub fn new(edges: EdgeSet) -> Self {
        Self { edges }
    }
}

impl<C> DecisionTaker<C> for Oracle {
    fn decide(&mut self, q: &Query<'_, C>) -> Result<bool> {
        Ok(self.edges.contains(q.entry.i, q.entry.j))
    }
}

/// Renders the context of each queried edge against the live partial
/// solution and accepts when the network is confident enough.
pub struct ModelPolicy<'a, R> {
    network: &'a Network<R>,
    coords: &'a [[f64; 2]],
    threshold: f64,
    render: RenderConfig,
    probabilities: Vec<(usize, f64)>,
}

impl<'a, R: Real> ModelPolicy<'a, R> {
    pub fn new(network: &'a Network<R>, coords: &'a [[f64; 2]], threshold: f64) -> Self {
        let render = RenderConfig {
            size: network.architecture().input_size,
            ..RenderConfig::default()
        };
        Self {
            network,
            coords,
            threshold,
            render,
            probabilities: Vec::new(),
        }
    }

    pub fn with_render_config(mut self, render: RenderConfig) -> Self {
        self.render = render;
        self
    }

    /// `(L_P index, p_optimal)` of every query answered so far.
    pub fn probabilities(&self) -> &[(usize, f64)] {
        &self.probabilities
    }
}

impl<R: Real, C: Cost> DecisionTaker<C> for ModelPolicy<'_, R> {
    fn decide(&mut self, q: &Query<'_, C>) -> Result<bool> {
        let img = render_context(self.coords, q.candidates, q.partial, q.entry.i, q.entry.j, &self.render)?;
        let p = self.network.forward(&img)?;
        self.probabilities.push((q.index, p.p_optimal));
        Ok(p.accept(self.threshold))
    }
}
