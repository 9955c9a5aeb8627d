//! Exact computations with harmonic functions on graded graphs.

pub mod cli;
pub mod error;
pub mod extnum;
pub mod fnspec;
pub mod graph;
pub mod harmonic;
pub mod ideals;
pub mod products;
pub mod slow;
pub mod suite;
pub mod young;

pub use error::{Error, Result};
pub use extnum::{ExtValue, Rational};
pub use graph::{GradedGraph, VertexId};
pub use harmonic::HarmonicFn;
pub use ideals::VertexSet;
