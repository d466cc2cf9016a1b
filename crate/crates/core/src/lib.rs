//! Superimposed stochastic block models and higher-order spectral clustering.

pub mod cli;
pub mod error;
pub mod estimators;
pub mod evaluation;
pub mod experiments;
pub mod generators;
pub mod graph_model;
pub mod motif;
pub mod spectral;

pub use error::{Error, Result};
pub use graph_model::{BlockParams, CommunityAssignment, SuperimposedGraph, SymmetricMatrix};
