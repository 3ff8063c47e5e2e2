//! Breadth-first machinery: balls `B^r_{G-W}(S)`, shortest set-to-set
//! paths and bipartite parity.

use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, GraphError, Path};
use crate::set::VertexSet;

/// Reusable BFS scratch space. Visited marks are epoch-stamped so repeated
/// searches on a large graph do not pay for clearing.
pub struct Bfs {
    stamp: Vec<u32>,
    epoch: u32,
    dist: Vec<u32>,
    parent: Vec<usize>,
    order: Vec<usize>,
    layer_ends: Vec<usize>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Bfs {
            stamp: vec![0; n],
            epoch: 0,
            dist: vec![0; n],
            parent: vec![usize::MAX; n],
            order: Vec::new(),
            layer_ends: Vec::new(),
        }
    }

    fn reset(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.order.clear();
        self.layer_ends.clear();
    }

    #[inline]
    pub fn visited(&self, v: usize) -> bool {
        self.stamp[v] == self.epoch
    }

    pub fn dist(&self, v: usize) -> Option<usize> {
        self.visited(v).then(|| self.dist[v] as usize)
    }

    /// Vertices in discovery order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `layer_ends()[i]` is the number of discovered vertices at distance ≤ i.
    pub fn layer_ends(&self) -> &[usize] {
        &self.layer_ends
    }

    pub fn visited_set(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }

    /// BFS-tree path from the seed that reached `v` to `v`.
    pub fn path_to(&self, v: usize) -> Path {
        let mut seq = vec![v];
        let mut cur = v;
        while self.parent[cur] != usize::MAX {
            cur = self.parent[cur];
            seq.push(cur);
        }
        seq.reverse();
        Path::new(seq)
    }

    /// Explores from `seeds` for at most `radius` layers, entering only
    /// vertices accepted by `pass` (seeds are always entered). Returns the
    /// first discovered vertex satisfying `stop`, ending the search there.
    pub fn run<P, S>(
        &mut self,
        g: &Graph,
        seeds: impl IntoIterator<Item = usize>,
        radius: usize,
        pass: P,
        mut stop: S,
    ) -> Option<usize>
    where
        P: Fn(usize) -> bool,
        S: FnMut(usize) -> bool,
    {
        self.reset();
        for s in seeds {
            if self.visited(s) {
                continue;
            }
            self.mark(s, 0, usize::MAX);
            if stop(s) {
                self.layer_ends.push(self.order.len());
                return Some(s);
            }
        }
        let mut head = 0;
        let mut depth = 0;
        while head < self.order.len() {
            let end = self.order.len();
            self.layer_ends.push(end);
            if depth == radius {
                break;
            }
            while head < end {
                let u = self.order[head];
                head += 1;
                for &v in g.neighbors(u) {
                    if self.visited(v) || !pass(v) {
                        continue;
                    }
                    self.mark(v, depth + 1, u);
                    if stop(v) {
                        self.layer_ends.push(self.order.len());
                        return Some(v);
                    }
                }
            }
            depth += 1;
        }
        None
    }

    #[inline]
    fn mark(&mut self, v: usize, d: usize, parent: usize) {
        self.stamp[v] = self.epoch;
        self.dist[v] = d as u32;
        self.parent[v] = parent;
        self.order.push(v);
    }
}

/// `B^r_{G-avoid}(seed)`: every vertex within `radius` steps of `seed` in
/// the graph with `avoid` deleted, including `seed` itself.
pub fn ball(g: &Graph, seed: &VertexSet, radius: usize, avoid: &VertexSet) -> VertexSet {
    let mut bfs = Bfs::new(g.n());
    bfs.run(g, seed.iter(), radius, |v| !avoid.contains(v), |_| false);
    bfs.visited_set()
}

/// Ball growth recorded layer by layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallLayers {
    pub order: Vec<usize>,
    /// `sizes[i] = |B^i|`; the last entry is the final ball.
    pub sizes: Vec<usize>,
}

impl BallLayers {
    pub fn ball(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }

    /// `|B^r|`, saturating at the final size once growth has stopped.
    pub fn size_at(&self, r: usize) -> usize {
        self.sizes
            .get(r)
            .or(self.sizes.last())
            .copied()
            .unwrap_or(0)
    }
}

pub fn ball_layers(g: &Graph, seed: &VertexSet, radius: usize, avoid: &VertexSet) -> BallLayers {
    let mut bfs = Bfs::new(g.n());
    bfs.run(g, seed.iter(), radius, |v| !avoid.contains(v), |_| false);
    BallLayers {
        order: bfs.order().to_vec(),
        sizes: bfs.layer_ends().to_vec(),
    }
}

/// Shortest path from `sources` to `targets` in `G - avoid` with at most
/// `max_len` edges. Only its first vertex lies in `sources` and only its
/// last in `targets`.
pub fn shortest_path(
    g: &Graph,
    sources: &VertexSet,
    targets: &VertexSet,
    avoid: &VertexSet,
    max_len: usize,
) -> Option<Path> {
    let mut bfs = Bfs::new(g.n());
    bfs.run(
        g,
        sources.iter().filter(|&s| !avoid.contains(s)),
        max_len,
        |v| !avoid.contains(v),
        |v| targets.contains(v),
    )
    .map(|t| bfs.path_to(t))
}

/// Distance from `a` to `b` in `G - avoid`, if at most `max`.
pub fn distance_between(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    avoid: &VertexSet,
    max: usize,
) -> Option<usize> {
    let mut bfs = Bfs::new(g.n());
    bfs.run(g, a.iter(), max, |v| !avoid.contains(v), |v| b.contains(v))
        .and_then(|t| bfs.dist(t))
}

/// `π(u, v)`: 0 when `u` and `v` share a side of the bipartition, 1
/// otherwise. Defined only for vertices of one component of a bipartite graph.
pub fn parity(g: &Graph, u: usize, v: usize) -> Result<u8, GraphError> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(GraphError::VertexOutOfRange {
                vertex: x,
                n: g.n(),
            });
        }
    }
    let (su, sv) = match (g.side(u), g.side(v)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GraphError::NotBipartite),
    };
    if g.component(u) != g.component(v) {
        return Err(GraphError::Disconnected { u, v });
    }
    Ok(u8::from(su != sv))
}

/// `d_G(v, W) = |N(v) ∩ W|`.
pub fn induced_degree(g: &Graph, v: usize, target: &VertexSet) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&w| target.contains(w))
        .count()
}
