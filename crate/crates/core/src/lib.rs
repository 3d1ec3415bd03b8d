//! Systems of disjoint representatives (SDRs) for families of segments.
//!
//! Given blocks of pairwise-disjoint segments, an SDR of size `n` picks `n`
//! pairwise-disjoint segments from `n` distinct blocks. This crate provides
//! exact rational geometry, an exhaustive oracle, constructive solvers for
//! segments on disjoint curves, few-lines families, axis-parallel families
//! and bounded-crossing curve families, lower-bound constructions, and the
//! closed-form block-count bounds.

pub mod algorithms;
pub mod bounds;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod model;

pub use error::{Error, Result};
