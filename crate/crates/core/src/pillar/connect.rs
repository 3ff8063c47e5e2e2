//! Paths of one exact length between two centres.
//!
//! Small search regions get an exhaustive depth-first search, pruned by
//! which `(vertex, remaining length)` pairs can still reach the target by
//! a walk. Otherwise a shortest path is lengthened by splicing in detours:
//! disjoint routes that leave the path and rejoin it further on, each
//! adding an even number of edges.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::config::PipelineConfig;
use crate::embed::Expansion;
use crate::graph::{parity, shortest_path, Bfs, Graph, Path};
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedLengthOptions {
    /// Exhaustive search runs when the search region has at most this many
    /// vertices.
    pub exact_cap: usize,
    /// Node budget of the exhaustive search.
    pub budget: usize,
    pub max_detours: usize,
    pub ell_min: usize,
    pub ell_max: usize,
}

impl FixedLengthOptions {
    pub fn from_config(c: &PipelineConfig) -> Self {
        FixedLengthOptions {
            exact_cap: c.exact_cap,
            budget: c.path_budget,
            max_detours: c.max_detours,
            ell_min: c.ell_min,
            ell_max: c.ell_max,
        }
    }
}

impl Default for FixedLengthOptions {
    fn default() -> Self {
        FixedLengthOptions {
            exact_cap: 64,
            budget: 2_000_000,
            max_detours: 64,
            ell_min: 1,
            ell_max: usize::MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedLengthError {
    Precondition(String),
    Parity {
        ell: usize,
        parity: u8,
    },
    /// Neither strategy produced the length; `nearest` lists the closest
    /// lengths the adjuster could realise, below and above.
    NotRealized {
        ell: usize,
        nearest: Vec<usize>,
    },
}

impl fmt::Display for FixedLengthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedLengthError::Precondition(m) => write!(f, "precondition failed: {m}"),
            FixedLengthError::Parity { ell, parity } => {
                write!(
                    f,
                    "length {ell} has the wrong parity (centres have parity {parity})"
                )
            }
            FixedLengthError::NotRealized { ell, nearest } => {
                write!(
                    f,
                    "length {ell} not realized; nearest achievable {nearest:?}"
                )
            }
        }
    }
}

impl core::error::Error for FixedLengthError {}

/// A `c1`–`c2` path of length exactly `ell` in `G - avoid`, where `c1`,
/// `c2` are the centres of `f1`, `f2`.
pub fn connect_fixed_length(
    g: &Graph,
    f1: &Expansion,
    f2: &Expansion,
    ell: usize,
    avoid: &VertexSet,
    opts: &FixedLengthOptions,
) -> Result<Path, FixedLengthError> {
    let pre = |m: String| Err(FixedLengthError::Precondition(m));
    let (a, b) = (f1.center(), f2.center());
    if a >= g.n() || b >= g.n() {
        return pre("centre out of range".into());
    }
    let (s1, s2) = (f1.member_set(), f2.member_set());
    if !s1.is_disjoint(&s2) {
        return pre("the two expansions intersect".into());
    }
    if !s1.is_disjoint(avoid) || !s2.is_disjoint(avoid) {
        return pre("an expansion meets the avoided set".into());
    }
    if ell < opts.ell_min || ell > opts.ell_max {
        return pre(format!(
            "length {ell} outside the window {}..={}",
            opts.ell_min, opts.ell_max
        ));
    }
    if let Ok(p) = parity(g, a, b) {
        if ell % 2 != p as usize {
            return Err(FixedLengthError::Parity { ell, parity: p });
        }
    }
    let region = search_region(g, a, b, ell, avoid);
    if region.len() <= opts.exact_cap {
        let mut budget = opts.budget;
        match exact_path(g, a, b, ell, avoid, &mut budget) {
            Some(p) => return Ok(p),
            None if budget > 0 => {
                return Err(FixedLengthError::NotRealized {
                    ell,
                    nearest: Vec::new(),
                })
            }
            None => {}
        }
    }
    let Some(core) = shortest_path(
        g,
        &VertexSet::singleton(a),
        &VertexSet::singleton(b),
        avoid,
        ell,
    ) else {
        return Err(FixedLengthError::NotRealized {
            ell,
            nearest: Vec::new(),
        });
    };
    let adj = Adjuster::build(g, core, avoid, opts.max_detours, ell);
    if let Some(subset) = adj.subset_for(ell) {
        let p = adj.realize(&subset);
        if p.len() == ell && p.validate(g).is_ok() {
            return Ok(p);
        }
    }
    let lengths = adj.realizable_lengths();
    let below = lengths.iter().rev().find(|&&l| l < ell).copied();
    let above = lengths.iter().find(|&&l| l > ell).copied();
    Err(FixedLengthError::NotRealized {
        ell,
        nearest: below.into_iter().chain(above).collect(),
    })
}

/// Vertices on some `a`–`b` walk of length at most `ell` in `G - avoid`.
fn search_region(g: &Graph, a: usize, b: usize, ell: usize, avoid: &VertexSet) -> VertexSet {
    let mut from_a = Bfs::new(g.n());
    from_a.run(g, [a], ell, |v| !avoid.contains(v), |_| false);
    let mut from_b = Bfs::new(g.n());
    from_b.run(g, [b], ell, |v| !avoid.contains(v), |_| false);
    from_a
        .order()
        .iter()
        .copied()
        .filter(|&v| match (from_a.dist(v), from_b.dist(v)) {
            (Some(x), Some(y)) => x + y <= ell,
            _ => false,
        })
        .collect()
}

/// Exhaustive search for an `a`–`b` path of exactly `ell` edges in
/// `G - avoid`. Each visited search node costs one unit of `budget`;
/// `None` with budget left means no such path exists.
pub fn exact_path(
    g: &Graph,
    a: usize,
    b: usize,
    ell: usize,
    avoid: &VertexSet,
    budget: &mut usize,
) -> Option<Path> {
    if avoid.contains(a) || avoid.contains(b) {
        return None;
    }
    if a == b {
        return (ell == 0).then(|| Path::trivial(a));
    }
    let region = search_region(g, a, b, ell, avoid);
    if !region.contains(a) {
        return None;
    }
    // walk[r] = vertices of the region with a walk of length r to b.
    let mut walk: Vec<VertexSet> = Vec::with_capacity(ell + 1);
    walk.push(VertexSet::singleton(b));
    for r in 1..=ell {
        let prev = &walk[r - 1];
        let next: VertexSet = region
            .iter()
            .filter(|&v| g.neighbors(v).iter().any(|&w| prev.contains(w)))
            .collect();
        walk.push(next);
    }
    let mut on_path = VertexSet::with_capacity(g.n());
    let mut route = alloc::vec![a];
    on_path.insert(a);
    if dfs(g, b, ell, &walk, &region, &mut route, &mut on_path, budget) {
        Some(Path::new(route))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &Graph,
    b: usize,
    remaining: usize,
    walk: &[VertexSet],
    region: &VertexSet,
    route: &mut Vec<usize>,
    on_path: &mut VertexSet,
    budget: &mut usize,
) -> bool {
    let v = *route.last().unwrap();
    if remaining == 0 {
        return v == b;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    for &w in g.neighbors(v) {
        if on_path.contains(w) || !region.contains(w) || !walk[remaining - 1].contains(w) {
            continue;
        }
        if w == b && remaining != 1 {
            continue;
        }
        route.push(w);
        on_path.insert(w);
        if dfs(g, b, remaining - 1, walk, region, route, on_path, budget) {
            return true;
        }
        on_path.remove(w);
        route.pop();
        if *budget == 0 {
            return false;
        }
    }
    false
}

/// A route leaving the core at `core[entry]` and rejoining at
/// `core[exit]`; its interior avoids the core and every other detour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detour {
    pub entry: usize,
    pub exit: usize,
    /// Full route from `core[entry]` to `core[exit]`.
    pub route: Vec<usize>,
}

impl Detour {
    /// Edges added by taking the route instead of the core segment.
    pub fn increment(&self) -> usize {
        (self.route.len() - 1) - (self.exit - self.entry)
    }
}

/// A core path with detours over pairwise non-overlapping core segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjuster {
    pub core: Path,
    pub detours: Vec<Detour>,
}

impl Adjuster {
    /// Harvests detours left to right along `core`, each a shortest route in
    /// the unused part of `G - avoid` whose increment is even, positive and
    /// as small as available. Routes longer than `max_route` edges are
    /// ignored.
    pub fn build(
        g: &Graph,
        core: Path,
        avoid: &VertexSet,
        max_detours: usize,
        max_route: usize,
    ) -> Adjuster {
        let verts = core.vertices().to_vec();
        let mut pos = alloc::collections::BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            pos.insert(v, i);
        }
        let mut used = avoid.clone();
        used.extend(verts.iter().copied());
        let mut detours = Vec::new();
        let mut bfs = Bfs::new(g.n());
        let mut a = 0;
        while a + 1 < verts.len() && detours.len() < max_detours {
            let seeds: Vec<usize> = g
                .neighbors(verts[a])
                .iter()
                .copied()
                .filter(|&x| !used.contains(x))
                .collect();
            let mut best: Option<(usize, usize, usize)> = None;
            if !seeds.is_empty() {
                // Each discovered y closes a route core[a], x.., y, core[b].
                let radius = max_route.saturating_sub(2);
                bfs.run(
                    g,
                    seeds.iter().copied(),
                    radius,
                    |v| !used.contains(v),
                    |_| false,
                );
                for &y in bfs.order() {
                    let dy = bfs.dist(y).unwrap_or(0);
                    for &c in g.neighbors(y) {
                        let Some(&b) = pos.get(&c) else { continue };
                        if b <= a {
                            continue;
                        }
                        let len = dy + 2;
                        if len <= b - a || !(len - (b - a)).is_multiple_of(2) {
                            continue;
                        }
                        let inc = len - (b - a);
                        if best.is_none_or(|(bi, bb, _)| (inc, b) < (bi, bb)) {
                            best = Some((inc, b, y));
                        }
                    }
                }
            }
            let Some((_, b, y)) = best else {
                a += 1;
                continue;
            };
            let mut route = alloc::vec![verts[a]];
            route.extend(bfs.path_to(y).into_vertices());
            route.push(verts[b]);
            used.extend(route.iter().copied());
            detours.push(Detour {
                entry: a,
                exit: b,
                route,
            });
            a = b;
        }
        Adjuster { core, detours }
    }

    pub fn increments(&self) -> Vec<usize> {
        self.detours.iter().map(Detour::increment).collect()
    }

    /// `|core| + Σ S` over every subset `S` of the increments, sorted.
    pub fn realizable_lengths(&self) -> Vec<usize> {
        let base = self.core.len();
        let total: usize = self.increments().iter().sum();
        let reach = subset_sums(&self.increments(), total);
        (0..=total)
            .filter(|&x| x == 0 || reach[x].is_some())
            .map(|x| base + x)
            .collect()
    }

    /// Detour indices whose increments sum to `ell - |core|`.
    pub fn subset_for(&self, ell: usize) -> Option<Vec<usize>> {
        let need = ell.checked_sub(self.core.len())?;
        let incs = self.increments();
        let reach = subset_sums(&incs, need);
        let mut out = Vec::new();
        let mut x = need;
        while x > 0 {
            let i = reach.get(x).copied().flatten()?;
            out.push(i);
            x -= incs[i];
        }
        out.sort_unstable();
        Some(out)
    }

    /// The core with the chosen detours spliced in.
    pub fn realize(&self, subset: &[usize]) -> Path {
        let verts = self.core.vertices();
        let mut chosen: Vec<&Detour> = subset.iter().map(|&i| &self.detours[i]).collect();
        chosen.sort_by_key(|d| d.entry);
        let mut out = Vec::with_capacity(verts.len());
        let mut i = 0;
        for d in chosen {
            out.extend_from_slice(&verts[i..d.entry]);
            out.extend_from_slice(&d.route[..d.route.len() - 1]);
            i = d.exit;
        }
        out.extend_from_slice(&verts[i..]);
        Path::new(out)
    }
}

/// `reach[x] = Some(i)`: sum `x` is reachable with item `i` used last.
fn subset_sums(items: &[usize], cap: usize) -> Vec<Option<usize>> {
    let mut reach: Vec<Option<usize>> = alloc::vec![None; cap + 1];
    let mut ok = alloc::vec![false; cap + 1];
    ok[0] = true;
    for (i, &w) in items.iter().enumerate() {
        if w == 0 || w > cap {
            continue;
        }
        for x in (w..=cap).rev() {
            if ok[x - w] && !ok[x] {
                ok[x] = true;
                reach[x] = Some(i);
            }
        }
    }
    reach
}
