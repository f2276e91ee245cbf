//! Constructive heuristics for the symmetric travelling salesman problem.
//!
//! The centrepiece is a two-phase constructor: a first phase walks a short,
//! sorted list of promising candidate edges and lets a pluggable
//! [`DecisionTaker`](construct::DecisionTaker) choose which to keep; a second
//! phase completes the tour with Clarke-Wright savings. Around it sit the
//! classic Nearest Neighbor, Multi-Fragment and Clarke-Wright constructors,
//! a context-image renderer, a ResNet-10 inference engine for the learned
//! policy, and the statistics and benchmark tools used to evaluate them.
//!
//! Algorithms are generic over [`Metric`] and its [`Cost`] scalar, so integer
//! matrices, `f64` TSPLIB costs and exact real distances all work. The CNN is
//! generic over [`Real`] (`f32` or `f64`).

pub mod analysis;
pub mod candidates;
pub mod cnn;
pub mod construct;
pub mod constructors;
pub mod error;
pub mod fragments;
pub mod instance;
pub mod metric;
pub mod render;
pub mod scalar;
pub mod solve;

pub use error::{Error, FormatError, Result};
pub use instance::{EdgeWeightType, Instance, Tour};
pub use metric::{DistanceMatrix, Metric};
pub use scalar::{Cost, Real};

/// The inference network in single precision, as stored on disk.
pub type ResNet10 = cnn::Network<f32>;
/// Double-precision network, handy for reference checks.
pub type ResNet10F64 = cnn::Network<f64>;
/// Costs of TSPLIB instances: integral values held in `f64`.
pub type TsplibCost = f64;
/// Dense cost matrix of a parsed instance.
pub type CostMatrix = DistanceMatrix<TsplibCost>;
/// Tour over TSPLIB costs.
pub type TsplibTour = Tour<TsplibCost>;
