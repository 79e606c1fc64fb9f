//! Toolkit for weighted coauthorship networks.
//!
//! Builds weighted collaboration graphs from publication records or from a
//! synthetic group-based growth model, computes symmetric and asymmetric
//! local tie metrics, scores node pairs with a catalogue of similarity
//! indices, and evaluates them as link predictors with balanced ROC/PR
//! harnesses.
//!
//! With the default `parallel` feature, batch scoring and multi-seed
//! evaluation fan out over a rayon pool; without it everything runs on a
//! single thread with identical results.

pub mod analysis;
pub mod error;
pub mod evaluation;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod similarity;

pub use error::Error;
pub use graph::{CoauthorGraph, EdgeData, NodeId, PaperRecord};
pub use similarity::ScoreKind;

pub type Result<T> = std::result::Result<T, Error>;
