//! Krakens: a cycle `v_1..v_k`, and for each `v_j` a private path `P_j` to
//! the end `u_j` of a private leg `F_j`, a `(t, s)`-expansion of `u_j`.

mod robust;
mod search;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use robust::{
    robust_kraken, KrakenSearchState, LinkPath, PipelineReport, RobustKraken, RobustOutcome,
};
pub use search::{find_kraken, KrakenSearch};

use crate::embed::{Expansion, ExpansionDefect};
use crate::graph::{distance_between, Cycle, Graph, Path, WalkDefect};
use crate::set::VertexSet;

/// A `(k, s, t)`-kraken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kraken {
    pub s: usize,
    pub t: usize,
    pub cycle: Cycle,
    pub ends: Vec<usize>,
    /// `legs[j]` is centred at `ends[j]`; its radius field is ignored by
    /// the checker, which measures against `s`.
    pub legs: Vec<Expansion>,
    /// `paths[j]` runs from `cycle[j]` to `ends[j]`.
    pub paths: Vec<Path>,
}

impl Kraken {
    pub fn k(&self) -> usize {
        self.cycle.len()
    }

    pub fn leg_set(&self, j: usize) -> VertexSet {
        self.legs[j].member_set()
    }

    /// Every vertex of the kraken.
    pub fn vertex_set(&self) -> VertexSet {
        let mut all = self.cycle.vertex_set();
        for leg in &self.legs {
            all.extend(leg.members().iter().copied());
        }
        for p in &self.paths {
            all.extend(p.vertices().iter().copied());
        }
        all
    }

    /// Same kraken with the cycle read from position `shift`, optionally in
    /// the opposite direction; ends, legs and paths follow their cycle vertex.
    pub fn reindexed(&self, shift: usize, reflect: bool) -> Kraken {
        Kraken {
            s: self.s,
            t: self.t,
            cycle: self.cycle.reindexed(shift, reflect),
            ends: crate::graph::reindex(&self.ends, shift, reflect),
            legs: crate::graph::reindex(&self.legs, shift, reflect),
            paths: crate::graph::reindex(&self.paths, shift, reflect),
        }
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Kraken {
        Kraken {
            s: self.s,
            t: self.t,
            cycle: self.cycle.map(&f),
            ends: self.ends.iter().map(|&v| f(v)).collect(),
            legs: self
                .legs
                .iter()
                .map(|e| {
                    Expansion::from_bfs_order(
                        f(e.center()),
                        e.members().iter().map(|&v| f(v)).collect(),
                        e.radius(),
                    )
                })
                .collect(),
            paths: self.paths.iter().map(|p| p.map(&f)).collect(),
        }
    }
}

/// One failed clause of the kraken definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KrakenClause {
    /// Ends, legs or paths do not number `k`.
    Shape(String),
    Cycle(WalkDefect),
    LegCentre {
        j: usize,
    },
    LegSize {
        j: usize,
        size: usize,
        t: usize,
    },
    LegNotExpansion {
        j: usize,
        defect: ExpansionDefect,
    },
    LegMeetsCycle {
        j: usize,
    },
    LegsOverlap {
        i: usize,
        j: usize,
    },
    Path {
        j: usize,
        defect: WalkDefect,
    },
    PathEndpoints {
        j: usize,
    },
    PathTooLong {
        j: usize,
        len: usize,
        max: usize,
    },
    PathsOverlap {
        i: usize,
        j: usize,
    },
    /// An interior vertex of `P_j` lies on the cycle or in a leg.
    PathInterior {
        j: usize,
        vertex: usize,
    },
}

impl fmt::Display for KrakenClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrakenClause::Shape(msg) => write!(f, "shape: {msg}"),
            KrakenClause::Cycle(d) => write!(f, "cycle: {d:?}"),
            KrakenClause::LegCentre { j } => write!(f, "leg {j} is not centred at its end"),
            KrakenClause::LegSize { j, size, t } => {
                write!(f, "leg {j} has {size} vertices, expected {t}")
            }
            KrakenClause::LegNotExpansion { j, defect } => {
                write!(f, "leg {j} is not an expansion: {defect:?}")
            }
            KrakenClause::LegMeetsCycle { j } => write!(f, "disjointness: leg {j} meets the cycle"),
            KrakenClause::LegsOverlap { i, j } => {
                write!(f, "disjointness: legs {i} and {j} overlap")
            }
            KrakenClause::Path { j, defect } => write!(f, "path {j}: {defect:?}"),
            KrakenClause::PathEndpoints { j } => {
                write!(f, "path {j} does not join its cycle vertex to its end")
            }
            KrakenClause::PathTooLong { j, len, max } => {
                write!(f, "length: path {j} has length {len} > {max}")
            }
            KrakenClause::PathsOverlap { i, j } => {
                write!(f, "disjointness: paths {i} and {j} overlap")
            }
            KrakenClause::PathInterior { j, vertex } => {
                write!(f, "path {j} passes through {vertex} on the cycle or a leg")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KrakenReport {
    pub failures: Vec<KrakenClause>,
}

impl KrakenReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every clause of the kraken definition against `g`.
pub fn verify_kraken(g: &Graph, kr: &Kraken) -> KrakenReport {
    let mut out = Vec::new();
    let k = kr.k();
    if kr.ends.len() != k || kr.legs.len() != k || kr.paths.len() != k {
        out.push(KrakenClause::Shape(alloc::format!(
            "cycle length {k}, {} ends, {} legs, {} paths",
            kr.ends.len(),
            kr.legs.len(),
            kr.paths.len()
        )));
        return KrakenReport { failures: out };
    }
    if let Err(d) = kr.cycle.validate(g) {
        out.push(KrakenClause::Cycle(d));
    }
    let cycle = kr.cycle.vertex_set();
    let mut legs = Vec::with_capacity(k);
    for (j, leg) in kr.legs.iter().enumerate() {
        if leg.center() != kr.ends[j] || leg.members().first() != Some(&kr.ends[j]) {
            out.push(KrakenClause::LegCentre { j });
        }
        if leg.size() != kr.t {
            out.push(KrakenClause::LegSize {
                j,
                size: leg.size(),
                t: kr.t,
            });
        }
        let checked = Expansion::from_bfs_order(leg.center(), leg.members().to_vec(), kr.s);
        if let Err(defect) = checked.validate(g) {
            out.push(KrakenClause::LegNotExpansion { j, defect });
        }
        let set = leg.member_set();
        if !set.is_disjoint(&cycle) {
            out.push(KrakenClause::LegMeetsCycle { j });
        }
        legs.push(set);
    }
    for i in 0..k {
        for j in i + 1..k {
            if !legs[i].is_disjoint(&legs[j]) {
                out.push(KrakenClause::LegsOverlap { i, j });
            }
        }
    }
    let mut all_legs = VertexSet::new();
    for l in &legs {
        all_legs.extend_from(l);
    }
    let max = 10 * kr.s;
    let mut path_sets = Vec::with_capacity(k);
    for (j, p) in kr.paths.iter().enumerate() {
        if let Err(defect) = p.validate(g) {
            out.push(KrakenClause::Path { j, defect });
            path_sets.push(VertexSet::new());
            continue;
        }
        if p.start() != kr.cycle.vertices()[j] || p.end() != kr.ends[j] {
            out.push(KrakenClause::PathEndpoints { j });
        }
        if p.len() > max {
            out.push(KrakenClause::PathTooLong {
                j,
                len: p.len(),
                max,
            });
        }
        if let Some(&v) = p
            .interior()
            .iter()
            .find(|&&v| cycle.contains(v) || all_legs.contains(v))
        {
            out.push(KrakenClause::PathInterior { j, vertex: v });
        }
        path_sets.push(p.vertex_set());
    }
    for i in 0..k {
        for j in i + 1..k {
            if !path_sets[i].is_disjoint(&path_sets[j]) {
                out.push(KrakenClause::PathsOverlap { i, j });
            }
        }
    }
    KrakenReport { failures: out }
}

/// Violations of the two extra properties a robust kraken carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationDefect {
    /// `u_j ∉ L` but `F_j` meets `L`.
    LegTouchesL { j: usize },
    /// Low-degree legs `i`, `j` closer than the separation in `G - L`.
    LegsClose { i: usize, j: usize, distance: usize },
    /// Low-degree leg `j` closer than the separation to `U ∖ L`.
    NearU { j: usize, distance: usize },
}

/// Checks that every leg has its end in `L` or avoids `L`, and that the
/// legs avoiding `L` are pairwise at distance at least `sep` in `G - L`
/// and at least `sep` from `U ∖ L`. Distances are measured by BFS.
pub fn check_separation(
    g: &Graph,
    kr: &Kraken,
    l: &VertexSet,
    u: &VertexSet,
    sep: usize,
) -> Vec<SeparationDefect> {
    let mut out = Vec::new();
    let mut low = Vec::new();
    for j in 0..kr.k() {
        let leg = kr.leg_set(j);
        if l.contains(kr.ends[j]) {
            continue;
        }
        if !leg.is_disjoint(l) {
            out.push(SeparationDefect::LegTouchesL { j });
        }
        low.push((j, leg));
    }
    if sep == 0 {
        return out;
    }
    let reach = sep - 1;
    let u_low = u.difference(l);
    for (a, (i, li)) in low.iter().enumerate() {
        for (j, lj) in &low[a + 1..] {
            if let Some(distance) = distance_between(g, li, lj, l, reach) {
                out.push(SeparationDefect::LegsClose {
                    i: *i,
                    j: *j,
                    distance,
                });
            }
        }
        if !u_low.is_empty() {
            if let Some(distance) = distance_between(g, li, &u_low, l, reach) {
                out.push(SeparationDefect::NearU { j: *i, distance });
            }
        }
    }
    out
}

/// Why a kraken search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KrakenStage {
    Cycle,
    Paths,
    Legs,
    Collection,
    Anchors,
    Linking,
    Collective,
    Assembly,
    Verify,
}

impl fmt::Display for KrakenStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            KrakenStage::Cycle => "cycle",
            KrakenStage::Paths => "private paths",
            KrakenStage::Legs => "legs",
            KrakenStage::Collection => "kraken collection",
            KrakenStage::Anchors => "anchors",
            KrakenStage::Linking => "linking legs",
            KrakenStage::Collective => "collective expansion",
            KrakenStage::Assembly => "assembly",
            KrakenStage::Verify => "verification",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KrakenError {
    Precondition(String),
    Stage { stage: KrakenStage, detail: String },
}

impl KrakenError {
    pub(crate) fn stage(stage: KrakenStage, detail: impl Into<String>) -> Self {
        KrakenError::Stage {
            stage,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for KrakenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrakenError::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            KrakenError::Stage { stage, detail } => {
                write!(f, "kraken search failed at stage {stage}: {detail}")
            }
        }
    }
}

impl core::error::Error for KrakenError {}
