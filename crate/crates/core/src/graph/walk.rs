use alloc::vec::Vec;

use super::Graph;
use crate::set::VertexSet;

/// Why a vertex sequence fails to be a path or cycle of the ambient graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkDefect {
    Empty,
    OutOfRange { vertex: usize },
    NotAdjacent { u: usize, v: usize },
    Repeated { vertex: usize },
    TooShort { len: usize, min: usize },
}

/// A simple path, stored as its vertex sequence. `len()` counts edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        Path(vertices)
    }

    pub fn trivial(v: usize) -> Self {
        Path(alloc::vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    /// Number of edges, `ℓ(P)`.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn interior(&self) -> &[usize] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// Concatenates `self` and `next`, which must start where `self` ends.
    pub fn join(&self, next: &Path) -> Path {
        debug_assert_eq!(self.end(), next.start());
        let mut v = self.0.clone();
        v.extend_from_slice(&next.0[1..]);
        Path(v)
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Path {
        Path(self.0.iter().map(|&v| f(v)).collect())
    }

    pub fn validate(&self, g: &Graph) -> Result<(), WalkDefect> {
        if self.0.is_empty() {
            return Err(WalkDefect::Empty);
        }
        check_sequence(g, &self.0, false)
    }
}

/// A cycle given by its cyclic vertex order `v_1, ..., v_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Self {
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// The same cycle indexed from `shift`, optionally walking backwards.
    pub fn reindexed(&self, shift: usize, reflect: bool) -> Cycle {
        Cycle(reindex(&self.0, shift, reflect))
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Cycle {
        Cycle(self.0.iter().map(|&v| f(v)).collect())
    }

    /// Checks adjacency around the cycle, distinctness, and length ≥ 3
    /// (≥ 4 when the ambient graph is bipartite).
    pub fn validate(&self, g: &Graph) -> Result<(), WalkDefect> {
        let min = if g.is_bipartite() { 4 } else { 3 };
        if self.0.len() < min {
            return Err(WalkDefect::TooShort {
                len: self.0.len(),
                min,
            });
        }
        check_sequence(g, &self.0, true)
    }
}

/// Position `i` of the result holds `items[(shift ± i) mod k]`.
pub(crate) fn reindex<T: Clone>(items: &[T], shift: usize, reflect: bool) -> Vec<T> {
    let k = items.len();
    (0..k)
        .map(|i| {
            let j = if reflect {
                (shift + k - i % k) % k
            } else {
                (shift + i) % k
            };
            items[j].clone()
        })
        .collect()
}

fn check_sequence(g: &Graph, seq: &[usize], closed: bool) -> Result<(), WalkDefect> {
    let mut seen = VertexSet::with_capacity(g.n());
    for &v in seq {
        if v >= g.n() {
            return Err(WalkDefect::OutOfRange { vertex: v });
        }
        if !seen.insert(v) {
            return Err(WalkDefect::Repeated { vertex: v });
        }
    }
    for w in seq.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(WalkDefect::NotAdjacent { u: w[0], v: w[1] });
        }
    }
    if closed {
        let (a, b) = (seq[seq.len() - 1], seq[0]);
        if !g.has_edge(a, b) {
            return Err(WalkDefect::NotAdjacent { u: a, v: b });
        }
    }
    Ok(())
}
