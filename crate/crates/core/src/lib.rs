//! Monochromatic triangle tilings of dense two-edge-coloured graphs.
//!
//! The crate provides extremal construction generators with their
//! closed-form bounds, exact packing solvers, constructive tilers that
//! guarantee the known minimum-degree bounds, and exhaustive or randomized
//! verifiers for the small lemmas those tilers rely on.

pub mod constructions;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod proof;
pub mod solvers;
pub mod verifiers;

pub use error::{Anomaly, Error, Result};
pub use graph::{Bowtie, Colour, ColouredGraph, MonoClique, Tiling, VertexSet};
