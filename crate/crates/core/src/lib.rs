//! Graph toolkit for triangle-free / odd-hole structure analysis at desk scale.
//!
//! The crate provides:
//! - an immutable bitset-backed simple graph ([`Graph`]) with neighbourhood,
//!   distance and induced-subgraph queries;
//! - named and random graph generators, including the Mycielski construction
//!   and a reproducible corpus stream ([`generators`]);
//! - induced-cycle enumeration, odd hole number, pentagonality ([`holes`]);
//! - exact chromatic numbers with witnesses and the neighbourhood parameters
//!   κ₂, κ₃ ([`coloring`]);
//! - levellings, lollipops, licking and cleanliness boosting ([`levelling`]);
//! - certifying extraction of stable levellings ([`extraction`]);
//! - covering analysis over small pentagonal targets, including an exhaustive
//!   bounded search for 1-coverings ([`cover`]);
//! - closed-form chromatic bounds and a per-graph bound report ([`bounds`]).
//!
//! Everything is deterministic: equal inputs give identical outputs, including
//! witness objects, regardless of external parallelism.

pub mod bitset;
pub mod bounds;
pub mod coloring;
pub mod cover;
pub mod error;
pub mod extraction;
pub mod generators;
pub mod graph;
pub mod holes;
pub mod io;
pub mod levelling;
pub mod rng;

pub use bitset::VertexSet;
pub use error::Error;
pub use graph::Graph;
