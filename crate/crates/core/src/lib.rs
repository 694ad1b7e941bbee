//! Rainbow Turán problems for color-critical graphs.
//!
//! A simple k-colored multigraph assigns each vertex pair a set of colors from
//! `1..=k`. A pattern `H` (a multigraph whose pairs carry multiplicities) is
//! contained rainbowly when `H` embeds injectively and its parallel edges can
//! be given pairwise distinct colors. This crate computes extremal numbers for
//! small parameters, checks freeness, builds the extremal constructions, and
//! tests the embedding lemmas used for color-critical patterns.

pub mod canon;
pub mod constructions;
pub mod criticality;
pub mod error;
pub mod friendliness;
pub mod graph;
pub mod matching;
pub mod nesting;
pub mod par;
pub mod patterns;
pub mod rainbow;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use graph::{ColoredMultigraph, Multigraph, MultiplicityGraph, Pattern, Vertex};
pub use par::Parallelism;
pub use rational::Rational;
