//! Constructive embedding of pillars in sublinear expanders.
//!
//! A pillar is two vertex-disjoint cycles of the same length `s` joined by
//! `s` vertex-disjoint paths of one common length, matching the cycle
//! vertices in order. This crate builds them the way the constructive
//! argument does: pass to a bipartite sublinear expander, look for a `Q3`
//! (the smallest pillar), otherwise grow krakens robustly and link two with
//! equal cycle length by fixed-length paths.
//!
//! Every search has an independent checker ([`pillar::verify_pillar`],
//! [`kraken::verify_kraken`], [`embed::Q3Certificate::validate`]) so results
//! can be trusted without trusting the heuristics that produced them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod config;
pub mod embed;
pub mod expander;
pub mod graph;
pub mod kraken;
pub mod pillar;
pub mod set;

pub use graph::{Cycle, Graph, GraphError, Path, Subgraph};
pub use set::VertexSet;
