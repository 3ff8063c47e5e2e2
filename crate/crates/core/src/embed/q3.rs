//! Finding the cube `Q3`.
//!
//! Cube vertices are labelled by 3-bit strings; two labels are adjacent when
//! they differ in one bit. A certificate stores the image of each label.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::EmbedError;
use crate::graph::Graph;
use crate::set::VertexSet;

/// Largest graph [`find_q3_bruteforce`] accepts.
pub const BRUTE_FORCE_CAP: usize = 40;

/// `vertices[b]` is the image of cube label `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Q3Certificate {
    pub vertices: [usize; 8],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Q3Defect {
    OutOfRange { vertex: usize },
    Repeated { vertex: usize },
    MissingEdge { u: usize, v: usize },
}

/// The 12 cube edges as label pairs.
pub fn cube_edges() -> impl Iterator<Item = (usize, usize)> {
    (0..8usize).flat_map(|b| {
        (0..3)
            .map(move |i| (b, b ^ (1 << i)))
            .filter(|&(x, y)| x < y)
    })
}

impl Q3Certificate {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        cube_edges()
            .map(|(a, b)| (self.vertices[a], self.vertices[b]))
            .collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<(), Q3Defect> {
        let mut seen = VertexSet::new();
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(Q3Defect::OutOfRange { vertex: v });
            }
            if !seen.insert(v) {
                return Err(Q3Defect::Repeated { vertex: v });
            }
        }
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                return Err(Q3Defect::MissingEdge { u, v });
            }
        }
        Ok(())
    }
}

fn choose3(n: usize) -> u128 {
    let n = n as u128;
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Colouring argument for bipartite `U`–`W` graphs with `|U| > C(|W|, 3)`.
///
/// Triples of `W` are coloured in lexicographic order, each by the first
/// unused common neighbour in `U`. Some `v ∈ U` stays uncoloured; any four
/// of its neighbours `x, y, z, w` have all four triples coloured by vertices
/// other than `v`, and those colours together with `x, y, z, w` span a cube
/// (it is `K_{4,4}` minus a perfect matching).
pub fn find_q3_bipartite(
    g: &Graph,
    u_side: &VertexSet,
    w_side: &VertexSet,
    d: usize,
) -> Result<Q3Certificate, EmbedError> {
    let pre = |msg: alloc::string::String| Err(EmbedError::Precondition(msg));
    if d < 4 {
        return pre(format!("degree bound d = {d} must be at least 4"));
    }
    if !u_side.is_disjoint(w_side) {
        return pre("U and W overlap".into());
    }
    for side in [u_side, w_side] {
        if let Some(v) = side.iter().find(|&v| v >= g.n()) {
            return pre(format!("vertex {v} out of range"));
        }
        for v in side {
            if g.neighbors(v).iter().any(|&x| side.contains(x)) {
                return pre(format!("edge inside one side at vertex {v}"));
            }
        }
    }
    let need = choose3(w_side.len());
    if (u_side.len() as u128) <= need {
        return pre(format!(
            "|U| = {} does not exceed C(|W|, 3) = {need}",
            u_side.len()
        ));
    }
    let into_w = |u: usize| -> Vec<usize> {
        g.neighbors(u)
            .iter()
            .copied()
            .filter(|&x| w_side.contains(x))
            .collect()
    };
    if let Some(u) = u_side.iter().find(|&u| into_w(u).len() < d) {
        return pre(format!("vertex {u} has fewer than {d} neighbours in W"));
    }

    let w: Vec<usize> = w_side.to_vec();
    let mut used = VertexSet::with_capacity(g.n());
    let mut colour: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            for k in j + 1..w.len() {
                let (x, y, z) = (w[i], w[j], w[k]);
                let c = u_side.iter().find(|&c| {
                    !used.contains(c) && g.has_edge(c, x) && g.has_edge(c, y) && g.has_edge(c, z)
                });
                if let Some(c) = c {
                    used.insert(c);
                    colour.insert([x, y, z], c);
                }
            }
        }
    }
    let Some(v) = u_side.iter().find(|&u| !used.contains(u)) else {
        return Err(EmbedError::Internal(
            "every vertex of U received a colour".into(),
        ));
    };
    let nbrs = into_w(v);
    let (x, y, z, w4) = (nbrs[0], nbrs[1], nbrs[2], nbrs[3]);
    let get = |t: [usize; 3]| {
        let mut t = t;
        t.sort_unstable();
        colour.get(&t).copied().ok_or_else(|| {
            EmbedError::Internal(format!("triple {t:?} inside N({v}) left uncoloured"))
        })
    };
    // x, y, z, w take the even labels; each colour sits opposite the one
    // vertex of {x, y, z, w} it misses.
    let mut vertices = [0usize; 8];
    vertices[0b000] = x;
    vertices[0b011] = y;
    vertices[0b101] = z;
    vertices[0b110] = w4;
    vertices[0b001] = get([x, y, z])?;
    vertices[0b100] = get([x, z, w4])?;
    vertices[0b111] = get([y, z, w4])?;
    vertices[0b010] = get([x, y, w4])?;
    let cert = Q3Certificate { vertices };
    cert.validate(g)
        .map_err(|e| EmbedError::Internal(format!("assembled cube is invalid: {e:?}")))?;
    Ok(cert)
}

/// Exhaustive search for a `Q3` subgraph; `None` certifies the graph
/// `Q3`-free.
pub fn find_q3_bruteforce(g: &Graph, cap: usize) -> Result<Option<Q3Certificate>, EmbedError> {
    if g.n() > cap {
        return Err(EmbedError::OverCap { n: g.n(), cap });
    }
    let mut budget = usize::MAX;
    Ok(find_q3_rooted(g, 0..g.n(), &VertexSet::new(), &mut budget))
}

// Placement order and, for each label, the earlier labels it must touch.
const ORDER: [(usize, &[usize]); 8] = [
    (0, &[]),
    (1, &[0]),
    (2, &[0]),
    (4, &[0]),
    (3, &[1, 2]),
    (5, &[1, 4]),
    (6, &[2, 4]),
    (7, &[3, 5, 6]),
];

/// Backtracking search with each root in turn as the image of label `000`.
/// Every candidate extension costs one unit of `budget`; the search gives
/// up (returning `None`) when it runs out.
pub fn find_q3_rooted(
    g: &Graph,
    roots: impl IntoIterator<Item = usize>,
    avoid: &VertexSet,
    budget: &mut usize,
) -> Option<Q3Certificate> {
    let mut img = [usize::MAX; 8];
    let mut used = VertexSet::with_capacity(g.n());
    for r in roots {
        if avoid.contains(r) || g.degree(r) < 3 {
            continue;
        }
        img[0] = r;
        used.insert(r);
        if extend(g, 1, &mut img, &mut used, avoid, budget) {
            return Some(Q3Certificate { vertices: img });
        }
        used.remove(r);
        if *budget == 0 {
            return None;
        }
    }
    None
}

fn extend(
    g: &Graph,
    step: usize,
    img: &mut [usize; 8],
    used: &mut VertexSet,
    avoid: &VertexSet,
    budget: &mut usize,
) -> bool {
    if step == 8 {
        return true;
    }
    let (label, touch) = ORDER[step];
    let anchor = img[touch[0]];
    for &c in g.neighbors(anchor) {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if used.contains(c) || avoid.contains(c) || g.degree(c) < 3 {
            continue;
        }
        // Coordinate permutations fix 000; order its neighbours.
        if (label == 2 && c < img[1]) || (label == 4 && c < img[2]) {
            continue;
        }
        if !touch[1..].iter().all(|&t| g.has_edge(c, img[t])) {
            continue;
        }
        img[label] = c;
        used.insert(c);
        if extend(g, step + 1, img, used, avoid, budget) {
            return true;
        }
        used.remove(c);
    }
    img[label] = usize::MAX;
    false
}
