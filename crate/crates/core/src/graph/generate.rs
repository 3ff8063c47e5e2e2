//! Seeded graph generators.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

/// Restarts allowed before the configuration model gives up.
const MAX_PAIRING_ATTEMPTS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    /// Uniform-ish `d`-regular graph from the configuration model.
    RandomRegular {
        n: usize,
        d: usize,
        seed: u64,
    },
    /// Sides `0..a` and `a..a+b`; each cross pair is an edge with probability `p`.
    RandomBipartite {
        a: usize,
        b: usize,
        p: f64,
        seed: u64,
    },
    Hypercube {
        dim: u32,
    },
    /// `C_s × K_2`.
    Prism {
        s: usize,
    },
    /// Prism with every matching edge replaced by a path of length `ell`.
    SubdividedPrism {
        s: usize,
        ell: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
}

pub fn generate(kind: GraphKind) -> Result<Graph, GraphError> {
    match kind {
        GraphKind::RandomRegular { n, d, seed } => random_regular(n, d, seed),
        GraphKind::RandomBipartite { a, b, p, seed } => random_bipartite(a, b, p, seed),
        GraphKind::Hypercube { dim } => hypercube(dim),
        GraphKind::Prism { s } => subdivided_prism(s, 1),
        GraphKind::SubdividedPrism { s, ell } => subdivided_prism(s, ell),
        GraphKind::Path { n } => {
            if n == 0 {
                return Err(invalid("path needs n >= 1"));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        GraphKind::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
    }
}

fn invalid(msg: &str) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

/// Configuration model: points are paired uniformly at random, and a
/// pairing that would create a loop or a parallel edge is redrawn. If the
/// remaining points cannot be paired, the whole construction restarts on
/// the next ChaCha stream of the same seed.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(invalid(&format!(
            "random regular needs 0 <= d < n and n*d even (n={n}, d={d})"
        )));
    }
    let points: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, d)).collect();
    for attempt in 0..MAX_PAIRING_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        if let Some(edges) = try_pairing(&points, n, &mut rng) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(invalid(&format!(
        "configuration model failed {MAX_PAIRING_ATTEMPTS} times for n={n}, d={d}"
    )))
}

fn try_pairing(points: &[usize], n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut pts = points.to_vec();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(points.len() / 2);
    while !pts.is_empty() {
        let len = pts.len();
        let budget = 100 + 10 * len;
        let mut placed = false;
        for _ in 0..budget {
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            if i == j {
                continue;
            }
            let (u, v) = (pts[i], pts[j]);
            if u == v || adj[u].contains(&v) {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
            edges.push((u, v));
            pts.swap_remove(i.max(j));
            pts.swap_remove(i.min(j));
            placed = true;
            break;
        }
        if !placed {
            return None;
        }
    }
    Some(edges)
}

fn random_bipartite(a: usize, b: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("edge probability must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..a {
        for w in a..a + b {
            if rng.gen_bool(p) {
                edges.push((u, w));
            }
        }
    }
    Graph::from_edges(a + b, edges)
}

fn hypercube(dim: u32) -> Result<Graph, GraphError> {
    if !(1..=24).contains(&dim) {
        return Err(invalid("hypercube dimension must be in 1..=24"));
    }
    let n = 1usize << dim;
    let edges = (0..n).flat_map(|v| {
        (0..dim)
            .map(move |b| (v, v ^ (1 << b)))
            .filter(|&(u, w)| u < w)
    });
    Graph::from_edges(n, edges)
}

/// Vertex layout of `subdivided_prism(s, ell)`: the two cycles in matching
/// order and the `s` connecting paths, each running from `cycle1[i]` to
/// `cycle2[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrismLayout {
    pub cycle1: Vec<usize>,
    pub cycle2: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

/// Ids: `cycle1 = 0..s`, `cycle2 = s..2s`, then the `ell - 1` interior
/// vertices of each path in order, path by path.
pub fn prism_layout(s: usize, ell: usize) -> Result<PrismLayout, GraphError> {
    if s < 3 {
        return Err(invalid("prism needs s >= 3"));
    }
    if ell == 0 {
        return Err(invalid("subdivided prism needs ell >= 1"));
    }
    let cycle1: Vec<usize> = (0..s).collect();
    let cycle2: Vec<usize> = (s..2 * s).collect();
    let paths = (0..s)
        .map(|i| {
            let mut p = vec![i];
            p.extend((0..ell - 1).map(|t| 2 * s + i * (ell - 1) + t));
            p.push(s + i);
            p
        })
        .collect();
    Ok(PrismLayout {
        cycle1,
        cycle2,
        paths,
    })
}

fn subdivided_prism(s: usize, ell: usize) -> Result<Graph, GraphError> {
    let layout = prism_layout(s, ell)?;
    let n = 2 * s + s * (ell - 1);
    let mut edges = Vec::new();
    for c in [&layout.cycle1, &layout.cycle2] {
        for i in 0..s {
            edges.push((c[i], c[(i + 1) % s]));
        }
    }
    for p in &layout.paths {
        edges.extend(p.windows(2).map(|w| (w[0], w[1])));
    }
    Graph::from_edges(n, edges)
}

/// Appends `extra` vertices and random edges touching them, so that the
/// added edges form a graph of maximum degree at most `max_degree`. Each
/// new vertex asks for `max_degree` partners among all vertices and keeps
/// the ones still available; it may end up isolated.
pub fn add_noise(
    g: &Graph,
    extra: usize,
    max_degree: usize,
    seed: u64,
) -> Result<Graph, GraphError> {
    let n = g.n() + extra;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut load = vec![0usize; n];
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut added: Vec<(usize, usize)> = Vec::new();
    for v in g.n()..n {
        for _ in 0..max_degree {
            if load[v] >= max_degree {
                break;
            }
            let w = rng.gen_range(0..n);
            let e = (v.min(w), v.max(w));
            if w != v && load[w] < max_degree && !added.contains(&e) {
                load[v] += 1;
                load[w] += 1;
                added.push(e);
            }
        }
    }
    edges.extend(added);
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_respects_its_degree_cap() {
        let g = generate(GraphKind::SubdividedPrism { s: 8, ell: 5 }).unwrap();
        let h = add_noise(&g, 40, 2, 3).unwrap();
        assert_eq!(h.n(), g.n() + 40);
        for v in 0..h.n() {
            let base = if v < g.n() { g.degree(v) } else { 0 };
            assert!(h.degree(v) <= base + 2);
        }
        for (u, v) in g.edges() {
            assert!(h.has_edge(u, v));
        }
        assert_eq!(h, add_noise(&g, 40, 2, 3).unwrap());
    }

    #[test]
    fn prism_four_is_a_cube_shape() {
        for g in [
            generate(GraphKind::Prism { s: 4 }).unwrap(),
            generate(GraphKind::SubdividedPrism { s: 4, ell: 1 }).unwrap(),
        ] {
            assert_eq!(g.n(), 8);
            assert_eq!(g.edge_count(), 12);
            assert_eq!(g.min_degree(), 3);
            assert_eq!(g.max_degree(), 3);
            assert!(g.is_bipartite());
        }
    }

    #[test]
    fn subdivided_prism_counts() {
        let g = generate(GraphKind::SubdividedPrism { s: 6, ell: 3 }).unwrap();
        assert_eq!(g.n(), 24);
        assert_eq!(g.edge_count(), 12 + 6 * 3);
        let layout = prism_layout(6, 3).unwrap();
        assert!(layout.paths.iter().all(|p| p.len() == 4));
    }

    #[test]
    fn hypercube_is_regular() {
        let g = generate(GraphKind::Hypercube { dim: 4 }).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.edge_count(), 32);
        assert_eq!(g.min_degree(), 4);
    }

    #[test]
    fn random_regular_is_simple_regular_and_deterministic() {
        let a = generate(GraphKind::RandomRegular {
            n: 1000,
            d: 10,
            seed: 7,
        })
        .unwrap();
        let b = generate(GraphKind::RandomRegular {
            n: 1000,
            d: 10,
            seed: 7,
        })
        .unwrap();
        let c = generate(GraphKind::RandomRegular {
            n: 1000,
            d: 10,
            seed: 8,
        })
        .unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.min_degree(), 10);
        assert_eq!(a.max_degree(), 10);
        assert_eq!(a.edge_count(), 5000);
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        assert!(generate(GraphKind::RandomRegular {
            n: 5,
            d: 3,
            seed: 0
        })
        .is_err());
        assert!(generate(GraphKind::RandomRegular {
            n: 4,
            d: 4,
            seed: 0
        })
        .is_err());
        assert!(generate(GraphKind::Prism { s: 2 }).is_err());
        assert!(generate(GraphKind::SubdividedPrism { s: 4, ell: 0 }).is_err());
        assert!(generate(GraphKind::Cycle { n: 2 }).is_err());
        assert!(generate(GraphKind::RandomBipartite {
            a: 2,
            b: 2,
            p: 1.5,
            seed: 0
        })
        .is_err());
    }

    #[test]
    fn random_bipartite_respects_sides() {
        let g = generate(GraphKind::RandomBipartite {
            a: 10,
            b: 15,
            p: 0.5,
            seed: 3,
        })
        .unwrap();
        assert!(g.edges().all(|(u, v)| u < 10 && v >= 10));
    }
}
