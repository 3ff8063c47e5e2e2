//! Reusable embedding machinery: cubes, short robust connections, ball
//! growth past obstacles, large balls, expansions and collective growth.

mod expansion;
mod grow;
mod q3;

pub use expansion::{grow_expansion, trim_expansion, Expansion, ExpansionDefect};
pub use grow::{
    collective_hypotheses, connect_short, expand_collectively, find_ball, find_large_ball,
    grow_past_thin, growth_bound, short_path_bound, CollectiveBounds, CollectiveSet, Hypothesis,
    ThinGrowth, ThinSetWitness,
};
pub use q3::{
    cube_edges, find_q3_bipartite, find_q3_bruteforce, find_q3_rooted, Q3Certificate, Q3Defect,
    BRUTE_FORCE_CAP,
};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum EmbedError {
    Precondition(String),
    OverCap {
        n: usize,
        cap: usize,
    },
    /// A search contradicted a guarantee it relies on.
    Internal(String),
    Disconnected,
    BoundExceeded {
        length: usize,
        bound: f64,
    },
    NoLargeBall {
        best: usize,
        target: usize,
    },
    CollectiveFailed {
        sizes: Vec<usize>,
    },
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            EmbedError::OverCap { n, cap } => {
                write!(
                    f,
                    "graph has {n} vertices, over the exhaustive-search cap {cap}"
                )
            }
            EmbedError::Internal(msg) => write!(f, "internal error: {msg}"),
            EmbedError::Disconnected => f.write_str("disconnected under avoidance"),
            EmbedError::BoundExceeded { length, bound } => {
                write!(f, "path of length {length} exceeds the bound {bound:.1}")
            }
            EmbedError::NoLargeBall { best, target } => {
                write!(f, "no centre reached {target} vertices (best {best})")
            }
            EmbedError::CollectiveFailed { sizes } => {
                write!(f, "collective expansion failed; final sizes {sizes:?}")
            }
        }
    }
}

impl core::error::Error for EmbedError {}
