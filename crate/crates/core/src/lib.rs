//! Community detection for graphs whose nodes carry fuzzy attribute
//! information alongside their edges.
//!
//! The pipeline: trapezoidal fuzzy sets are defuzzified into crisp values
//! ([`fuzzy`]), the values of each characteristic define a Sugeno
//! lambda-measure over the nodes ([`measure`]), pairwise Shapley-value
//! perturbations of those measures yield a synergy matrix per
//! characteristic ([`synergy`]), the aggregated synergy matrix F is blended
//! with the adjacency matrix A as M = gamma*A + (1-gamma)*F, and a
//! dual-matrix Louvain maximizes modularity on M while moving only along
//! edges of A ([`louvain`]). Partitions are compared with normalized
//! mutual information ([`metrics`]), benchmark instances with planted
//! communities come from [`benchgen`], and [`experiment`] scores detection
//! over replicated benchmark grids.

pub mod benchgen;
pub mod error;
pub mod experiment;
pub mod fuzzy;
pub mod graph;
pub mod io;
pub mod louvain;
pub mod measure;
pub mod metrics;
pub mod rng;
pub mod synergy;

pub use error::{Error, Result};
pub use fuzzy::{Defuzzifier, FuzzyVector, TrapezoidalFuzzySet};
pub use graph::{FuzzyAttributedGraph, Partition, WeightedGraph};
pub use measure::SugenoLambdaMeasure;
pub use synergy::Aggregator;
