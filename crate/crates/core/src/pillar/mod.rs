//! Pillars: two disjoint cycles of length `s` joined in order by `s`
//! disjoint paths of one common length `ℓ`.

mod connect;
mod driver;
mod link;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use connect::{
    connect_fixed_length, exact_path, Adjuster, Detour, FixedLengthError, FixedLengthOptions,
};
pub use driver::{find_pillar, PillarError, PillarRun, PillarStage};
pub use link::{link_krakens, LinkCase, LinkError, LinkSide};

use crate::embed::Q3Certificate;
use crate::graph::{Cycle, Graph, Path, WalkDefect};
use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pillar {
    pub s: usize,
    pub ell: usize,
    pub cycle1: Cycle,
    pub cycle2: Cycle,
    /// `paths[i]` joins `cycle1[i]` to the matching vertex of `cycle2`.
    pub paths: Vec<Path>,
}

impl Pillar {
    /// The cube as a pillar with `s = 4`, `ℓ = 1`: the faces with the top
    /// label bit 0 and 1, matched along that bit.
    pub fn from_q3(cert: &Q3Certificate) -> Pillar {
        let face = [0b000, 0b001, 0b011, 0b010];
        let v = |b: usize| cert.vertices[b];
        Pillar {
            s: 4,
            ell: 1,
            cycle1: Cycle::new(face.iter().map(|&b| v(b)).collect()),
            cycle2: Cycle::new(face.iter().map(|&b| v(b | 0b100)).collect()),
            paths: face
                .iter()
                .map(|&b| Path::new(alloc::vec![v(b), v(b | 0b100)]))
                .collect(),
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        let mut all = self.cycle1.vertex_set();
        all.extend_from(&self.cycle2.vertex_set());
        for p in &self.paths {
            all.extend(p.vertices().iter().copied());
        }
        all
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Pillar {
        Pillar {
            s: self.s,
            ell: self.ell,
            cycle1: self.cycle1.map(&f),
            cycle2: self.cycle2.map(&f),
            paths: self.paths.iter().map(|p| p.map(&f)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PillarClause {
    Shape(String),
    Cycle1(WalkDefect),
    Cycle2(WalkDefect),
    CyclesOverlap,
    Path {
        i: usize,
        defect: WalkDefect,
    },
    /// `Q_i` does not start at the `i`-th vertex of the first cycle.
    Start {
        i: usize,
    },
    /// `Q_i` does not end on the second cycle.
    End {
        i: usize,
    },
    /// Ends are on the second cycle but not in cyclic order.
    Matching,
    EqualLength {
        i: usize,
        len: usize,
        ell: usize,
    },
    PathsOverlap {
        i: usize,
        j: usize,
    },
    PathInterior {
        i: usize,
        vertex: usize,
    },
}

impl fmt::Display for PillarClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PillarClause::Shape(msg) => write!(f, "shape: {msg}"),
            PillarClause::Cycle1(d) => write!(f, "first cycle: {d:?}"),
            PillarClause::Cycle2(d) => write!(f, "second cycle: {d:?}"),
            PillarClause::CyclesOverlap => f.write_str("the cycles share a vertex"),
            PillarClause::Path { i, defect } => write!(f, "path {i}: {defect:?}"),
            PillarClause::Start { i } => write!(f, "path {i} does not start at cycle vertex {i}"),
            PillarClause::End { i } => write!(f, "path {i} does not end on the second cycle"),
            PillarClause::Matching => {
                f.write_str("in-order matching: ends are out of cyclic order")
            }
            PillarClause::EqualLength { i, len, ell } => {
                write!(f, "equal length: path {i} has length {len}, expected {ell}")
            }
            PillarClause::PathsOverlap { i, j } => write!(f, "paths {i} and {j} intersect"),
            PillarClause::PathInterior { i, vertex } => {
                write!(f, "path {i} passes through cycle vertex {vertex}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PillarReport {
    pub failures: Vec<PillarClause>,
}

impl PillarReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every pillar clause against `g`. The second cycle may be listed
/// from any starting vertex in either direction.
pub fn verify_pillar(g: &Graph, p: &Pillar) -> PillarReport {
    let mut out = Vec::new();
    let s = p.s;
    if p.cycle1.len() != s || p.cycle2.len() != s || p.paths.len() != s {
        out.push(PillarClause::Shape(alloc::format!(
            "s = {s}, cycles of length {} and {}, {} paths",
            p.cycle1.len(),
            p.cycle2.len(),
            p.paths.len()
        )));
        return PillarReport { failures: out };
    }
    if let Err(d) = p.cycle1.validate(g) {
        out.push(PillarClause::Cycle1(d));
    }
    if let Err(d) = p.cycle2.validate(g) {
        out.push(PillarClause::Cycle2(d));
    }
    let c1 = p.cycle1.vertex_set();
    let c2 = p.cycle2.vertex_set();
    if !c1.is_disjoint(&c2) {
        out.push(PillarClause::CyclesOverlap);
    }
    let on_cycles = c1.union(&c2);
    let mut positions = Vec::with_capacity(s);
    let mut sets = Vec::with_capacity(s);
    for (i, q) in p.paths.iter().enumerate() {
        if let Err(defect) = q.validate(g) {
            out.push(PillarClause::Path { i, defect });
            sets.push(VertexSet::new());
            positions.push(None);
            continue;
        }
        if q.start() != p.cycle1.vertices()[i] {
            out.push(PillarClause::Start { i });
        }
        let pos = p.cycle2.vertices().iter().position(|&w| w == q.end());
        if pos.is_none() {
            out.push(PillarClause::End { i });
        }
        positions.push(pos);
        if q.len() != p.ell {
            out.push(PillarClause::EqualLength {
                i,
                len: q.len(),
                ell: p.ell,
            });
        }
        if let Some(&v) = q.interior().iter().find(|&&v| on_cycles.contains(v)) {
            out.push(PillarClause::PathInterior { i, vertex: v });
        }
        sets.push(q.vertex_set());
    }
    if positions.iter().all(Option::is_some) && s > 0 {
        let pos: Vec<usize> = positions.into_iter().flatten().collect();
        let forward = (0..s).all(|i| pos[i] == (pos[0] + i) % s);
        let backward = (0..s).all(|i| pos[i] == (pos[0] + s - i) % s);
        if !forward && !backward {
            out.push(PillarClause::Matching);
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            if !sets[i].is_disjoint(&sets[j]) {
                out.push(PillarClause::PathsOverlap { i, j });
            }
        }
    }
    PillarReport { failures: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, prism_layout, GraphKind};

    fn natural(s: usize, ell: usize) -> (Graph, Pillar) {
        let g = generate(GraphKind::SubdividedPrism { s, ell }).unwrap();
        let lay = prism_layout(s, ell).unwrap();
        let p = Pillar {
            s,
            ell,
            cycle1: Cycle::new(lay.cycle1.clone()),
            cycle2: Cycle::new(lay.cycle2.clone()),
            paths: lay.paths.iter().map(|q| Path::new(q.clone())).collect(),
        };
        (g, p)
    }

    #[test]
    fn natural_decomposition_is_valid() {
        let (g, p) = natural(6, 3);
        assert_eq!(verify_pillar(&g, &p).failures, alloc::vec![]);
    }

    #[test]
    fn rotation_and_reflection_of_second_cycle_accepted() {
        let (g, mut p) = natural(6, 3);
        p.cycle2 = p.cycle2.reindexed(0, true);
        assert!(verify_pillar(&g, &p).is_valid());
        p.cycle2 = p.cycle2.reindexed(2, false);
        assert!(verify_pillar(&g, &p).is_valid());
    }

    #[test]
    fn wrong_length_is_flagged() {
        // Path 0 replaced by a length-4 walk around through a neighbour.
        let (g, mut p) = natural(6, 3);
        let q1 = p.paths[1].clone();
        let c1 = p.cycle1.vertices().to_vec();
        let mut route = alloc::vec![c1[0]];
        route.extend_from_slice(q1.vertices());
        p.paths[0] = Path::new(route);
        let report = verify_pillar(&g, &p);
        assert!(report.failures.iter().any(|c| matches!(
            c,
            PillarClause::EqualLength {
                i: 0,
                len: 4,
                ell: 3
            }
        )));
    }

    #[test]
    fn swapped_endpoints_break_matching() {
        // The prism with two crossing chords added, so that the swapped
        // paths exist and only the order is wrong.
        let lay = prism_layout(4, 1).unwrap();
        let (v, w) = (&lay.cycle1, &lay.cycle2);
        let mut edges: alloc::vec::Vec<(usize, usize)> = generate(GraphKind::Prism { s: 4 })
            .unwrap()
            .edges()
            .collect();
        edges.push((v[0], w[1]));
        edges.push((v[1], w[0]));
        let g = Graph::from_edges(8, edges).unwrap();
        let mut p = Pillar {
            s: 4,
            ell: 1,
            cycle1: Cycle::new(v.clone()),
            cycle2: Cycle::new(w.clone()),
            paths: (0..4).map(|i| Path::new(alloc::vec![v[i], w[i]])).collect(),
        };
        assert!(verify_pillar(&g, &p).is_valid());
        p.paths[0] = Path::new(alloc::vec![v[0], w[1]]);
        p.paths[1] = Path::new(alloc::vec![v[1], w[0]]);
        assert_eq!(
            verify_pillar(&g, &p).failures,
            alloc::vec![PillarClause::Matching]
        );
    }

    #[test]
    fn cube_is_a_pillar() {
        let g = generate(GraphKind::Hypercube { dim: 3 }).unwrap();
        let cert = Q3Certificate {
            vertices: [0, 1, 2, 3, 4, 5, 6, 7],
        };
        let p = Pillar::from_q3(&cert);
        assert!(verify_pillar(&g, &p).is_valid());
    }
}
