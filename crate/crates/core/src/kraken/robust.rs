//! Krakens that avoid a forbidden set `U` and whose low-degree legs are far
//! apart.
//!
//! The search keeps a collection of krakens in `G - U`, a family of large
//! anchor sets, and short paths linking legs either to high-degree vertices
//! (`L`) or to anchors. A kraken with every leg linked is rebuilt with new
//! legs at the far ends of those paths. Otherwise a free leg is grown
//! collectively and connected to an unused anchor, and the search repeats.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    check_separation, find_kraken, verify_kraken, Kraken, KrakenError, KrakenSearch, KrakenStage,
};
use crate::config::PipelineConfig;
use crate::embed::{
    connect_short, expand_collectively, find_ball, find_q3_bruteforce, trim_expansion,
    CollectiveSet, Expansion,
};
use crate::expander::{extract_expander, ExtractOptions};
use crate::graph::{ball, distance_between, induced_degree, shortest_path, Bfs, Graph, Path};
use crate::set::VertexSet;

/// A path from a leg of a collected kraken to `L` or to an anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkPath {
    pub kraken: usize,
    pub leg: usize,
    /// Starts in the leg, ends in `L ∖ U` or in the anchor.
    pub path: Path,
    pub anchor: Option<usize>,
}

/// Everything the robust search has built so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrakenSearchState {
    pub high: VertexSet,
    pub forbidden: VertexSet,
    pub u0: VertexSet,
    pub u1: VertexSet,
    pub collection: Vec<Kraken>,
    pub anchors: Vec<Expansion>,
    pub paths_to_l: Vec<LinkPath>,
    pub paths_to_z: Vec<LinkPath>,
    pub rewrites: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RobustOutcome {
    /// A collected kraken with all legs linked, rebuilt on the link ends.
    Assembled { kraken: usize },
    /// A collected kraken that already had both properties.
    Direct { kraken: usize },
}

/// Sizes reached by each stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineReport {
    pub high: usize,
    pub u0: usize,
    pub krakens: usize,
    pub anchors: usize,
    pub paths_to_l: usize,
    pub paths_to_z: usize,
    pub rewrites: usize,
    pub rounds: usize,
    pub outcome: Option<RobustOutcome>,
}

impl core::fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "|L| = {}, |U0| = {}, krakens {}, anchors {}, paths to L {}, paths to anchors {}, rewrites {}, rounds {}",
            self.high,
            self.u0,
            self.krakens,
            self.anchors,
            self.paths_to_l,
            self.paths_to_z,
            self.rewrites,
            self.rounds
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustKraken {
    pub kraken: Kraken,
    pub report: PipelineReport,
    pub state: KrakenSearchState,
}

impl KrakenSearchState {
    pub fn new(g: &Graph, u: &VertexSet, config: &PipelineConfig) -> Self {
        let high: VertexSet = (0..g.n())
            .filter(|&v| g.degree(v) >= config.high_degree)
            .collect();
        let need = config.u0_degree().max(1);
        let u0: VertexSet = if u.is_empty() {
            VertexSet::new()
        } else {
            (0..g.n())
                .filter(|&v| !u.contains(v) && induced_degree(g, v, u) >= need)
                .collect()
        };
        let u1 = u.union(&u0);
        KrakenSearchState {
            high,
            forbidden: u.clone(),
            u0,
            u1,
            collection: Vec::new(),
            anchors: Vec::new(),
            paths_to_l: Vec::new(),
            paths_to_z: Vec::new(),
            rewrites: 0,
        }
    }

    pub fn report(&self, rounds: usize, outcome: Option<RobustOutcome>) -> PipelineReport {
        PipelineReport {
            high: self.high.len(),
            u0: self.u0.len(),
            krakens: self.collection.len(),
            anchors: self.anchors.len(),
            paths_to_l: self.paths_to_l.len(),
            paths_to_z: self.paths_to_z.len(),
            rewrites: self.rewrites,
            rounds,
            outcome,
        }
    }

    fn links(&self) -> impl Iterator<Item = &LinkPath> {
        self.paths_to_l.iter().chain(self.paths_to_z.iter())
    }

    pub fn link_of(&self, kraken: usize, leg: usize) -> Option<&LinkPath> {
        self.links().find(|p| p.kraken == kraken && p.leg == leg)
    }

    /// `V(𝒫_i ∪ 𝒬_i)`.
    pub fn link_vertices(&self, kraken: usize) -> VertexSet {
        let mut out = VertexSet::new();
        for p in self.links().filter(|p| p.kraken == kraken) {
            out.extend(p.path.vertices().iter().copied());
        }
        out
    }

    fn anchors_used_by(&self, kraken: usize) -> Vec<usize> {
        self.paths_to_z
            .iter()
            .filter(|p| p.kraken == kraken)
            .filter_map(|p| p.anchor)
            .collect()
    }

    /// Bookkeeping invariants, checked after every change to the link paths.
    pub fn check_invariants(&self, g: &Graph, config: &PipelineConfig) -> Result<(), String> {
        let q_max = 3 * config.m;
        for p in &self.paths_to_l {
            if p.path.len() > config.ell0 {
                return Err(format!("path to L from kraken {} is too long", p.kraken));
            }
            if !self.high.contains(p.path.end()) || self.forbidden.contains(p.path.end()) {
                return Err(format!(
                    "path to L from kraken {} ends outside L ∖ U",
                    p.kraken
                ));
            }
        }
        for p in &self.paths_to_z {
            if p.path.len() > q_max {
                return Err(format!(
                    "path to an anchor from kraken {} is too long",
                    p.kraken
                ));
            }
            let Some(a) = p.anchor else {
                return Err("path to an anchor without an anchor index".into());
            };
            if !self.anchors[a].member_set().contains(p.path.end()) {
                return Err(format!("path from kraken {} misses anchor {a}", p.kraken));
            }
        }
        for p in self.links() {
            if p.path.validate(g).is_err() {
                return Err(format!("link path of kraken {} is not a path", p.kraken));
            }
            if !self.collection[p.kraken]
                .leg_set(p.leg)
                .contains(p.path.start())
            {
                return Err(format!(
                    "link path of kraken {} starts off its leg",
                    p.kraken
                ));
            }
        }
        for i in 0..self.collection.len() {
            let mine: Vec<&LinkPath> = self.links().filter(|p| p.kraken == i).collect();
            for (a, p) in mine.iter().enumerate() {
                for q in &mine[a + 1..] {
                    if p.leg == q.leg {
                        return Err(format!("leg {} of kraken {i} linked twice", p.leg));
                    }
                    if !p.path.vertex_set().is_disjoint(&q.path.vertex_set()) {
                        return Err(format!("link paths of kraken {i} intersect"));
                    }
                }
            }
            let mut used = self.anchors_used_by(i);
            used.sort_unstable();
            if used.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("kraken {i} links an anchor twice"));
            }
        }
        Ok(())
    }

    /// A maximal collection of krakens in `G - U`, each one's legs far from
    /// everything collected before.
    pub fn collect(&mut self, g: &Graph, config: &PipelineConfig) -> Result<(), KrakenError> {
        let d = config.params.d;
        let keep_away = self.u1.difference(&self.high);
        while self.collection.len() < config.kraken_target {
            let mut used = keep_away.clone();
            for kr in &self.collection {
                used.extend_from(&kr.vertex_set());
            }
            let used = used.difference(&self.high);
            let carved = if used.is_empty() {
                VertexSet::new()
            } else {
                ball(g, &used, config.kraken_spacing, &self.high)
            };
            let avoid = self.forbidden.union(&carved);
            let seed = config.seed.wrapping_add(self.collection.len() as u64);
            let found = if config.reextract {
                let keep = VertexSet::full(g.n()).difference(&avoid);
                let sub = g.induced(&keep);
                let d_sub = (d / 64).max(1);
                let mut opts = ExtractOptions::new(d_sub, seed);
                opts.enforce_average_degree = config.enforce_degree_hypothesis;
                opts.trials = config.expansion_trials;
                match extract_expander(&sub.graph, &config.params.with_degree(d_sub), &opts) {
                    Ok(inner) => {
                        let h = sub.compose(inner);
                        let mut search = self.search_options(config, seed);
                        search.high = h.local_set(&self.high);
                        search.keep_away = h.local_set(&keep_away);
                        find_kraken(&h.graph, &search).map(|kr| kr.map(|v| h.host_of(v)))
                    }
                    Err(e) => Err(KrakenError::stage(
                        KrakenStage::Collection,
                        format!("re-extraction failed: {e}"),
                    )),
                }
            } else {
                let mut search = self.search_options(config, seed);
                search.avoid = avoid;
                search.high = self.high.clone();
                search.keep_away = keep_away.clone();
                find_kraken(g, &search)
            };
            match found {
                Ok(kr) => self.collection.push(kr),
                Err(e) if self.collection.is_empty() => {
                    return Err(KrakenError::stage(
                        KrakenStage::Collection,
                        format!("no kraken in G - U: {e}"),
                    ));
                }
                Err(_) => break,
            }
        }
        Ok(())
    }

    fn search_options(&self, config: &PipelineConfig, seed: u64) -> KrakenSearch {
        let mut s = KrakenSearch::new(config.k_max, config.m, config.leg_size, seed);
        s.probes = config.cycle_probes;
        s.separation = config.separation;
        s
    }

    /// Disjoint large balls, pairwise `separation` apart in `G - L` and as
    /// far from `U`, avoiding the collected krakens.
    pub fn build_anchors(&mut self, g: &Graph, config: &PipelineConfig) -> Result<(), KrakenError> {
        let reach = config.separation.saturating_sub(1);
        let mut blocked = self.forbidden.union(&self.high);
        for kr in &self.collection {
            blocked.extend_from(&kr.vertex_set());
        }
        let u_low = self.forbidden.difference(&self.high);
        if !u_low.is_empty() {
            blocked.extend_from(&ball(g, &u_low, reach, &self.high));
        }
        while self.anchors.len() < config.anchor_count {
            let Ok(found) = find_ball(g, &blocked, config.anchor_size, config.m) else {
                break;
            };
            let z = trim_expansion(&found, config.anchor_size)
                .map_err(|e| KrakenError::stage(KrakenStage::Anchors, format!("{e}")))?;
            let zs = z.member_set();
            for (i, other) in self.anchors.iter().enumerate() {
                if distance_between(g, &zs, &other.member_set(), &self.high, reach).is_some() {
                    return Err(KrakenError::stage(
                        KrakenStage::Anchors,
                        format!(
                            "anchors {i} and {} closer than {}",
                            self.anchors.len(),
                            config.separation
                        ),
                    ));
                }
            }
            blocked.extend_from(&ball(g, &zs, reach, &self.high));
            self.anchors.push(z);
        }
        Ok(())
    }

    /// What a link path from leg `j` of kraken `i` must avoid.
    fn link_avoid(&self, i: usize, j: usize) -> VertexSet {
        let kr = &self.collection[i];
        let mut avoid = kr.vertex_set().difference(&kr.leg_set(j));
        avoid.extend_from(&self.forbidden);
        avoid.extend_from(&self.link_vertices(i));
        avoid
    }

    /// Greedy maximal `𝒫`: BFS-shortest paths of length at most `ℓ0` from
    /// unlinked legs to `L ∖ U`.
    pub fn link_to_high(&mut self, g: &Graph, config: &PipelineConfig) {
        let targets = self.high.difference(&self.forbidden);
        if targets.is_empty() {
            return;
        }
        for i in 0..self.collection.len() {
            for j in 0..self.collection[i].k() {
                if self.link_of(i, j).is_some() {
                    continue;
                }
                let leg = self.collection[i].leg_set(j);
                let avoid = self.link_avoid(i, j);
                if let Some(path) = shortest_path(g, &leg, &targets, &avoid, config.ell0) {
                    self.paths_to_l.push(LinkPath {
                        kraken: i,
                        leg: j,
                        path,
                        anchor: None,
                    });
                }
            }
        }
    }

    /// Greedy maximal `𝒬`: BFS-shortest paths of length at most `3m` from
    /// unlinked legs to anchors this kraken has not used yet.
    pub fn link_to_anchors(&mut self, g: &Graph, config: &PipelineConfig) {
        if self.anchors.is_empty() {
            return;
        }
        let anchor_sets: Vec<VertexSet> = self.anchors.iter().map(|z| z.member_set()).collect();
        for i in 0..self.collection.len() {
            for j in 0..self.collection[i].k() {
                if self.link_of(i, j).is_some() {
                    continue;
                }
                let used = self.anchors_used_by(i);
                let mut targets = VertexSet::new();
                let mut avoid = self.link_avoid(i, j);
                for (a, z) in anchor_sets.iter().enumerate() {
                    if used.contains(&a) {
                        avoid.extend_from(z);
                    } else {
                        targets.extend_from(z);
                    }
                }
                let targets = targets.difference(&avoid);
                if targets.is_empty() {
                    break;
                }
                let leg = self.collection[i].leg_set(j);
                let Some(path) = shortest_path(g, &leg, &targets, &avoid, 3 * config.m) else {
                    continue;
                };
                let anchor = anchor_sets.iter().position(|z| z.contains(path.end()));
                self.paths_to_z.push(LinkPath {
                    kraken: i,
                    leg: j,
                    path,
                    anchor,
                });
            }
        }
    }

    /// Rebuilds kraken `i` on the far ends of its link paths, if every leg is
    /// linked: ends in `L` get a star of neighbours as leg, ends in an anchor
    /// get a trimmed piece of the anchor.
    pub fn assemble(&self, g: &Graph, i: usize, config: &PipelineConfig) -> Option<Kraken> {
        let kr = &self.collection[i];
        let links: Vec<&LinkPath> = (0..kr.k())
            .map(|j| self.link_of(i, j))
            .collect::<Option<_>>()?;
        let mut paths = Vec::with_capacity(kr.k());
        for (j, link) in links.iter().enumerate() {
            let leg = kr.leg_set(j);
            let mut bfs = Bfs::new(g.n());
            let a = link.path.start();
            bfs.run(g, [kr.ends[j]], usize::MAX, |v| leg.contains(v), |v| v == a)?;
            let inside = bfs.path_to(a);
            let full = kr.paths[j].join(&inside).join(&link.path);
            full.validate(g).ok()?;
            paths.push(full);
        }
        let mut occupied = kr.cycle.vertex_set();
        for p in &paths {
            occupied.extend(p.vertices().iter().copied());
        }
        occupied.extend_from(&self.forbidden);
        let t = config.leg_size;
        let mut legs = Vec::with_capacity(kr.k());
        let mut radius = 1;
        for (j, link) in links.iter().enumerate() {
            let end = link.path.end();
            let leg = match link.anchor {
                None => {
                    let mut order = alloc::vec![end];
                    order.extend(
                        g.neighbors(end)
                            .iter()
                            .copied()
                            .filter(|&v| !occupied.contains(v))
                            .take(t.saturating_sub(1)),
                    );
                    Expansion::from_bfs_order(end, order, 1)
                }
                Some(a) => {
                    let z = self.anchors[a].member_set();
                    let e = crate::embed::grow_expansion(
                        g,
                        end,
                        |v| z.contains(v) && !occupied.contains(v),
                        t,
                        usize::MAX,
                    );
                    radius = radius.max(e.radius());
                    e
                }
            };
            if leg.size() != t {
                return None;
            }
            occupied.extend(leg.members().iter().copied());
            legs.push((j, leg));
        }
        let ends: Vec<usize> = links.iter().map(|l| l.path.end()).collect();
        let longest = paths.iter().map(|p| p.len()).max().unwrap_or(0);
        let s = (2 * config.m).max(radius).max(longest.div_ceil(10));
        Some(Kraken {
            s,
            t,
            cycle: kr.cycle.clone(),
            ends,
            legs: legs
                .into_iter()
                .map(|(_, e)| Expansion::from_bfs_order(e.center(), e.members().to_vec(), s))
                .collect(),
            paths,
        })
    }

    fn acceptable(&self, g: &Graph, kr: &Kraken, config: &PipelineConfig) -> bool {
        verify_kraken(g, kr).is_valid()
            && kr.vertex_set().is_disjoint(&self.forbidden)
            && check_separation(g, kr, &self.high, &self.forbidden, config.separation).is_empty()
    }

    /// The first unlinked leg of each kraken that has one.
    fn free_legs(&self) -> Vec<(usize, usize)> {
        (0..self.collection.len())
            .filter_map(|i| {
                (0..self.collection[i].k())
                    .find(|&j| self.link_of(i, j).is_none())
                    .map(|j| (i, j))
            })
            .collect()
    }

    fn collective_member(&self, i: usize, j: usize) -> CollectiveSet {
        let kr = &self.collection[i];
        let a = kr.leg_set(j);
        let b = kr.vertex_set().difference(&a);
        let c = self.link_vertices(i).difference(&a);
        CollectiveSet { a, b, c }
    }

    /// Applies the shortening rule once: if the ball of radius `r - 1`
    /// around free leg `j` of kraken `i` has more than `r + 1` neighbours on
    /// one link path, that path is rerouted to start from the free leg.
    fn shortcut(&mut self, g: &Graph, i: usize, j: usize, config: &PipelineConfig) -> bool {
        let member = self.collective_member(i, j);
        let blocked =
            |v: usize| self.forbidden.contains(v) || member.b.contains(v) || member.c.contains(v);
        let mut bfs = Bfs::new(g.n());
        for r in 1..=config.ell0 {
            bfs.run(g, member.a.iter(), r - 1, |v| !blocked(v), |_| false);
            let inner = bfs.visited_set();
            let nbhd = g.neighborhood(&inner);
            let mut chosen = None;
            for (idx, link) in self
                .paths_to_l
                .iter()
                .chain(self.paths_to_z.iter())
                .enumerate()
                .filter(|(_, p)| p.kraken == i)
            {
                let hits: Vec<usize> = link
                    .path
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| nbhd.contains(**v))
                    .map(|(pos, _)| pos)
                    .collect();
                if hits.len() > r + 1 {
                    chosen = Some((idx, *hits.last().unwrap()));
                    break;
                }
            }
            let Some((idx, pos)) = chosen else {
                continue;
            };
            let in_l = idx < self.paths_to_l.len();
            let link = if in_l {
                &self.paths_to_l[idx]
            } else {
                &self.paths_to_z[idx - self.paths_to_l.len()]
            };
            let p = link.path.vertices()[pos];
            let Some(&x) = g.neighbors(p).iter().find(|&&x| inner.contains(x)) else {
                continue;
            };
            let head = bfs.path_to(x);
            let mut route = head.into_vertices();
            route.extend_from_slice(&link.path.vertices()[pos..]);
            let new_path = Path::new(route);
            if new_path.len() >= link.path.len() || new_path.validate(g).is_err() {
                continue;
            }
            let replacement = LinkPath {
                kraken: i,
                leg: j,
                path: new_path,
                anchor: link.anchor,
            };
            if in_l {
                self.paths_to_l[idx] = replacement;
            } else {
                self.paths_to_z[idx - self.paths_to_l.len()] = replacement;
            }
            self.rewrites += 1;
            return true;
        }
        false
    }

    /// One round of collective expansion: grow the free legs, connect the
    /// first one to reach the threshold to an anchor its kraken has not used.
    pub fn collective_step(
        &mut self,
        g: &Graph,
        config: &PipelineConfig,
    ) -> Result<(), KrakenError> {
        let mut guard = 0;
        loop {
            let free = self.free_legs();
            let mut changed = false;
            for &(i, j) in &free {
                if self.shortcut(g, i, j, config) {
                    changed = true;
                    break;
                }
            }
            guard += 1;
            if !changed || guard > 1000 {
                break;
            }
        }
        let free = self.free_legs();
        if free.is_empty() {
            return Err(KrakenError::stage(
                KrakenStage::Assembly,
                "every leg is linked but no kraken could be rebuilt",
            ));
        }
        let family: Vec<CollectiveSet> = free
            .iter()
            .map(|&(i, j)| self.collective_member(i, j))
            .collect();
        let (winner, grown) = expand_collectively(
            g,
            &self.forbidden,
            &family,
            config.ell0,
            config.expand_threshold,
        )
        .map_err(|e| KrakenError::stage(KrakenStage::Collective, format!("{e}")))?;
        let (i, j) = free[winner];
        let member = &family[winner];
        let used = self.anchors_used_by(i);
        let mut wall = self.forbidden.union(&member.b);
        wall.extend_from(&member.c);
        let mut targets = VertexSet::new();
        for (a, z) in self.anchors.iter().enumerate() {
            if used.contains(&a) {
                wall.extend(z.members().iter().copied());
            } else {
                targets.extend(z.members().iter().copied());
            }
        }
        let targets = targets.difference(&wall);
        if targets.is_empty() {
            return Err(KrakenError::stage(
                KrakenStage::Collective,
                format!("kraken {i} has no unused anchor"),
            ));
        }
        let route = if let Some(hit) = grown.intersection(&targets).iter().next() {
            Path::trivial(hit)
        } else {
            let outside = targets.difference(&grown);
            let wall = wall.difference(&grown).difference(&outside);
            connect_short(g, &grown, &outside, &wall, &config.params, 1, false)
                .map_err(|e| KrakenError::stage(KrakenStage::Collective, format!("{e}")))?
        };
        let mut bfs = Bfs::new(g.n());
        let start = route.start();
        bfs.run(
            g,
            member.a.iter(),
            usize::MAX,
            |v| grown.contains(v),
            |v| v == start,
        )
        .ok_or_else(|| KrakenError::stage(KrakenStage::Collective, "ball is not connected"))?;
        let path = bfs.path_to(start).join(&route);
        if path.len() > 3 * config.m {
            return Err(KrakenError::stage(
                KrakenStage::Collective,
                format!(
                    "connection of length {} exceeds 3m = {}",
                    path.len(),
                    3 * config.m
                ),
            ));
        }
        let anchor = self
            .anchors
            .iter()
            .position(|z| z.member_set().contains(path.end()));
        self.paths_to_z.push(LinkPath {
            kraken: i,
            leg: j,
            path,
            anchor,
        });
        Ok(())
    }
}

/// A kraken in `G - U` with every leg's end in `L` or its leg inside
/// `G - L`, and low-degree legs pairwise `config.separation` apart in
/// `G - L` and as far from `U ∖ L`.
pub fn robust_kraken(
    g: &Graph,
    u: &VertexSet,
    config: &PipelineConfig,
) -> Result<RobustKraken, KrakenError> {
    if u.len() > config.u_cap {
        return Err(KrakenError::Precondition(format!(
            "|U| = {} exceeds the cap {}",
            u.len(),
            config.u_cap
        )));
    }
    if g.n() <= config.q3_cap {
        if let Ok(Some(_)) = find_q3_bruteforce(g, config.q3_cap) {
            return Err(KrakenError::Precondition("graph contains Q3".into()));
        }
    }
    let mut st = KrakenSearchState::new(g, u, config);
    st.collect(g, config)?;
    st.build_anchors(g, config)?;
    st.link_to_high(g, config);
    st.link_to_anchors(g, config);
    let fail = |st: &KrakenSearchState, stage, msg: String, rounds| {
        KrakenError::stage(stage, format!("{msg} ({})", st.report(rounds, None)))
    };
    st.check_invariants(g, config)
        .map_err(|m| fail(&st, KrakenStage::Linking, m, 0))?;
    for round in 0..=config.collective_rounds {
        for i in 0..st.collection.len() {
            if let Some(kr) = st.assemble(g, i, config) {
                if st.acceptable(g, &kr, config) {
                    let report = st.report(round, Some(RobustOutcome::Assembled { kraken: i }));
                    return Ok(RobustKraken {
                        kraken: kr,
                        report,
                        state: st,
                    });
                }
            }
        }
        if round == 0 {
            if let Some(i) =
                (0..st.collection.len()).find(|&i| st.acceptable(g, &st.collection[i], config))
            {
                let report = st.report(0, Some(RobustOutcome::Direct { kraken: i }));
                return Ok(RobustKraken {
                    kraken: st.collection[i].clone(),
                    report,
                    state: st,
                });
            }
        }
        if round == config.collective_rounds {
            break;
        }
        st.collective_step(g, config)
            .map_err(|e| fail(&st, KrakenStage::Collective, format!("{e}"), round))?;
        st.check_invariants(g, config)
            .map_err(|m| fail(&st, KrakenStage::Linking, m, round))?;
    }
    Err(fail(
        &st,
        KrakenStage::Collective,
        "rounds exhausted".into(),
        config.collective_rounds,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expander::ExpanderParams;
    use crate::graph::{generate, GraphKind};

    fn relaxed() -> PipelineConfig {
        PipelineConfig::relaxed(ExpanderParams::new(0.1, 0.2, 8).unwrap())
    }

    #[test]
    fn random_regular_gives_separated_kraken() {
        let g = generate(GraphKind::RandomRegular {
            n: 3000,
            d: 8,
            seed: 4,
        })
        .unwrap();
        let cfg = relaxed();
        let out = robust_kraken(&g, &VertexSet::new(), &cfg).unwrap();
        assert!(verify_kraken(&g, &out.kraken).is_valid());
        let none = VertexSet::new();
        assert!(
            check_separation(&g, &out.kraken, &out.state.high, &none, cfg.separation).is_empty()
        );
        assert!(out.report.krakens >= 1);
        assert!(out.state.check_invariants(&g, &cfg).is_ok());
    }

    #[test]
    fn assembly_uses_anchors() {
        let g = generate(GraphKind::RandomRegular {
            n: 3000,
            d: 8,
            seed: 5,
        })
        .unwrap();
        let cfg = relaxed();
        let out = robust_kraken(&g, &VertexSet::new(), &cfg).unwrap();
        if let Some(RobustOutcome::Assembled { .. }) = out.report.outcome {
            assert_eq!(out.kraken.s, 2 * cfg.m);
        }
        assert!(out.report.anchors > 0);
    }

    #[test]
    fn forbidden_set_is_avoided() {
        let g = generate(GraphKind::RandomRegular {
            n: 2000,
            d: 8,
            seed: 6,
        })
        .unwrap();
        let cfg = relaxed();
        let first = robust_kraken(&g, &VertexSet::new(), &cfg).unwrap().kraken;
        let u = first.vertex_set();
        let second = robust_kraken(&g, &u, &cfg).unwrap();
        assert!(second.kraken.vertex_set().is_disjoint(&u));
        assert!(
            check_separation(&g, &second.kraken, &second.state.high, &u, cfg.separation).is_empty()
        );
    }

    #[test]
    fn collective_step_links_a_free_leg() {
        let g = generate(GraphKind::RandomRegular {
            n: 3000,
            d: 8,
            seed: 7,
        })
        .unwrap();
        let cfg = relaxed();
        let mut st = KrakenSearchState::new(&g, &VertexSet::new(), &cfg);
        st.collect(&g, &cfg).unwrap();
        st.build_anchors(&g, &cfg).unwrap();
        st.link_to_anchors(&g, &cfg);
        // Free one leg of every kraken.
        st.paths_to_z.retain(|p| p.leg != 0);
        let before = st.paths_to_z.len();
        st.collective_step(&g, &cfg).unwrap();
        assert_eq!(st.paths_to_z.len(), before + 1);
        assert_eq!(st.check_invariants(&g, &cfg), Ok(()));
        let fresh = st.paths_to_z.last().unwrap();
        assert!(st.collection[fresh.kraken]
            .leg_set(fresh.leg)
            .contains(fresh.path.start()));
    }

    #[test]
    fn reextraction_keeps_host_ids() {
        let g = generate(GraphKind::RandomRegular {
            n: 2000,
            d: 8,
            seed: 8,
        })
        .unwrap();
        let mut cfg = relaxed();
        cfg.reextract = true;
        cfg.params = ExpanderParams::new(0.01, 0.2, 8).unwrap();
        let out = robust_kraken(&g, &VertexSet::new(), &cfg).unwrap();
        assert!(verify_kraken(&g, &out.kraken).is_valid());
    }

    #[test]
    fn oversized_u_is_rejected() {
        let g = generate(GraphKind::Cycle { n: 20 }).unwrap();
        let mut cfg = relaxed();
        cfg.u_cap = 3;
        let u: VertexSet = (0..4).collect();
        assert!(matches!(
            robust_kraken(&g, &u, &cfg),
            Err(KrakenError::Precondition(_))
        ));
    }

    #[test]
    fn bare_cycle_fails_at_collection() {
        let g = generate(GraphKind::Cycle { n: 100 }).unwrap();
        let err = robust_kraken(&g, &VertexSet::new(), &relaxed()).unwrap_err();
        assert!(matches!(
            err,
            KrakenError::Stage {
                stage: KrakenStage::Collection,
                ..
            }
        ));
    }

    #[test]
    fn q3_is_rejected_when_small() {
        let g = generate(GraphKind::Hypercube { dim: 3 }).unwrap();
        assert!(matches!(
            robust_kraken(&g, &VertexSet::new(), &relaxed()),
            Err(KrakenError::Precondition(_))
        ));
    }
}
