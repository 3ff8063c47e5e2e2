//! Immutable simple graphs over dense vertex ids, plus the path and cycle
//! value types every other module passes around.
//!
//! Deletion is never done by mutation: operations take an `avoid` set and
//! work in the graph with those vertices removed.

mod generate;
mod io;
mod search;
mod walk;

pub use generate::{add_noise, generate, prism_layout, GraphKind, PrismLayout};
pub use io::{parse_edge_list, ParseError};
pub use search::{
    ball, ball_layers, distance_between, induced_degree, parity, shortest_path, BallLayers, Bfs,
};
pub(crate) use walk::reindex;
pub use walk::{Cycle, Path, WalkDefect};

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    SelfLoop { vertex: usize },
    VertexOutOfRange { vertex: usize, n: usize },
    NotBipartite,
    Disconnected { u: usize, v: usize },
    InvalidParameter(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            GraphError::NotBipartite => f.write_str("graph is not bipartite"),
            GraphError::Disconnected { u, v } => {
                write!(f, "vertices {u} and {v} lie in different components")
            }
            GraphError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric. The bipartition, when it
/// exists, is computed once at construction together with the component
/// labels, so parity queries are constant time.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
    side: Option<Vec<bool>>,
    component: Vec<usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .field("bipartite", &self.is_bipartite())
            .finish()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges collapse; self-loops
    /// and ids `>= n` are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Builds a graph with `n = max id + 1`.
    pub fn from_edge_list(edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Self::from_edges(n, edges.iter().copied())
    }

    fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut edges = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edges += list.len();
        }
        let (side, component) = two_colour(&adj);
        Graph {
            adj,
            edges: edges / 2,
            side,
            component,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// `2e(G)/|G|`, zero for the empty graph.
    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.edges as f64 / self.n() as f64
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_bipartite(&self) -> bool {
        self.side.is_some()
    }

    /// Side of `v` in the bipartition (`false`/`true`), if bipartite.
    pub fn side(&self, v: usize) -> Option<bool> {
        self.side.as_ref().map(|s| s[v])
    }

    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn component_count(&self) -> usize {
        self.component.iter().max().map_or(0, |c| c + 1)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|u| self.adj[u].iter().filter(|&&v| set.contains(v)).count())
            .sum::<usize>()
            / 2
    }

    /// `N(W) = (∪ N(v)) \ W`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::with_capacity(self.n());
        for u in set {
            for &v in &self.adj[u] {
                if !set.contains(v) {
                    out.insert(v);
                }
            }
        }
        out
    }

    /// Subgraph induced on `keep`, relabelled densely in increasing id order.
    pub fn induced(&self, keep: &VertexSet) -> Subgraph {
        self.filtered(keep, |_, _| true)
    }

    /// Subgraph on `keep` containing only edges accepted by `edge_ok`.
    pub fn filtered<F>(&self, keep: &VertexSet, mut edge_ok: F) -> Subgraph
    where
        F: FnMut(usize, usize) -> bool,
    {
        let to_host: Vec<usize> = keep.iter().filter(|&v| v < self.n()).collect();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in to_host.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); to_host.len()];
        for (i, &u) in to_host.iter().enumerate() {
            for &v in &self.adj[u] {
                if local[v] != usize::MAX && edge_ok(u, v) {
                    adj[i].push(local[v]);
                }
            }
        }
        Subgraph {
            graph: Graph::from_adjacency(adj),
            to_host,
        }
    }
}

/// BFS two-colouring; also labels connected components.
fn two_colour(adj: &[Vec<usize>]) -> (Option<Vec<bool>>, Vec<usize>) {
    let n = adj.len();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut bipartite = true;
    let mut queue = VecDeque::new();
    let mut next = 0;
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        component[s] = next;
        colour[s] = Some(false);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap_or(false);
            for &v in &adj[u] {
                if component[v] == usize::MAX {
                    component[v] = next;
                    colour[v] = Some(!cu);
                    queue.push_back(v);
                } else if colour[v] == Some(cu) {
                    bipartite = false;
                }
            }
        }
        next += 1;
    }
    let side = bipartite.then(|| colour.into_iter().map(|c| c.unwrap_or(false)).collect());
    (side, component)
}

/// A graph derived from a host graph, with the map back to host ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_host: Vec<usize>,
}

impl Subgraph {
    /// The whole graph viewed as a subgraph of itself.
    pub fn identity(graph: Graph) -> Self {
        let to_host = (0..graph.n()).collect();
        Subgraph { graph, to_host }
    }

    pub fn host_of(&self, v: usize) -> usize {
        self.to_host[v]
    }

    pub fn host_set(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.to_host[v]).collect()
    }

    /// Local ids of the host vertices in `set` that survive in this subgraph.
    pub fn local_set(&self, set: &VertexSet) -> VertexSet {
        self.to_host
            .iter()
            .enumerate()
            .filter(|(_, &h)| set.contains(h))
            .map(|(i, _)| i)
            .collect()
    }

    /// Composes `self ⊆ host` with `inner ⊆ self`, giving `inner ⊆ host`.
    pub fn compose(&self, inner: Subgraph) -> Subgraph {
        let to_host = inner.to_host.iter().map(|&v| self.to_host[v]).collect();
        Subgraph {
            graph: inner.graph,
            to_host,
        }
    }

    pub fn host_vertices(&self) -> VertexSet {
        self.to_host.iter().copied().collect()
    }
}
