//! Kraken search: a short cycle, then a private path and a leg for each of
//! its vertices, claimed greedily so that all parts stay disjoint.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{verify_kraken, Kraken, KrakenError, KrakenStage};
use crate::embed::{grow_expansion, Expansion};
use crate::graph::{ball, Bfs, Cycle, Graph};
use crate::set::VertexSet;

/// Options for [`find_kraken`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrakenSearch {
    pub k_max: usize,
    /// Leg radius; paths may have length up to `10·s`.
    pub s: usize,
    /// Leg size.
    pub t: usize,
    pub seed: u64,
    /// Number of root vertices probed for short cycles.
    pub probes: usize,
    /// Candidate cycles tried before giving up.
    pub max_cycles: usize,
    /// Nothing of the kraken may use these vertices.
    pub avoid: VertexSet,
    /// High-degree set `L`: legs avoid it and distances are taken in `G - L`.
    pub high: VertexSet,
    /// Minimum distance in `G - L` between two legs, and between a leg and
    /// `keep_away`.
    pub separation: usize,
    pub keep_away: VertexSet,
}

impl KrakenSearch {
    pub fn new(k_max: usize, s: usize, t: usize, seed: u64) -> Self {
        KrakenSearch {
            k_max,
            s,
            t,
            seed,
            probes: 64,
            max_cycles: 32,
            avoid: VertexSet::new(),
            high: VertexSet::new(),
            separation: 1,
            keep_away: VertexSet::new(),
        }
    }
}

/// Finds a `(k, s, t)`-kraken with `k ≤ k_max`, verified before return.
pub fn find_kraken(g: &Graph, opts: &KrakenSearch) -> Result<Kraken, KrakenError> {
    if opts.t == 0 {
        return Err(KrakenError::Precondition(
            "leg size t must be at least 1".into(),
        ));
    }
    let cycles = short_cycles(g, opts);
    if cycles.is_empty() {
        return Err(KrakenError::stage(
            KrakenStage::Cycle,
            format!("no cycle of length at most {} found", opts.k_max),
        ));
    }
    let mut worst: Option<(KrakenStage, alloc::string::String)> = None;
    for cycle in cycles.into_iter().take(opts.max_cycles.max(1)) {
        match attach(g, &cycle, opts) {
            Ok(kr) => {
                let report = verify_kraken(g, &kr);
                if !report.is_valid() {
                    return Err(KrakenError::stage(
                        KrakenStage::Verify,
                        format!("assembled kraken is invalid: {}", report.failures[0]),
                    ));
                }
                return Ok(kr);
            }
            Err((stage, detail)) => {
                // Keep the failure that got furthest.
                let further = match &worst {
                    None => true,
                    Some((s, _)) => *s == KrakenStage::Paths && stage == KrakenStage::Legs,
                };
                if further {
                    worst = Some((stage, detail));
                }
            }
        }
    }
    let (stage, detail) = worst.unwrap_or((KrakenStage::Cycle, "no candidate cycle".into()));
    Err(KrakenError::stage(stage, detail))
}

fn available_degree(g: &Graph, v: usize, avoid: &VertexSet) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&w| !avoid.contains(w))
        .count()
}

/// Short cycles through the neighbourhoods of seeded roots, shortest
/// first; cycles whose vertices all keep three usable neighbours come
/// before the rest.
fn short_cycles(g: &Graph, opts: &KrakenSearch) -> Vec<Vec<usize>> {
    let n = g.n();
    let avoid = &opts.avoid;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut roots: Vec<usize> = if n <= opts.probes.max(1) * 4 {
        let mut all: Vec<usize> = (0..n).filter(|&v| !avoid.contains(v)).collect();
        all.shuffle(&mut rng);
        all
    } else {
        let mut picked = Vec::new();
        for _ in 0..opts.probes.max(1) * 8 {
            let v = rng.gen_range(0..n);
            if !avoid.contains(v) && available_degree(g, v, avoid) >= 3 {
                picked.push(v);
                if picked.len() == opts.probes.max(1) {
                    break;
                }
            }
        }
        picked
    };
    roots.truncate(opts.probes.max(1));

    // A cycle vertex needs a third usable neighbour for its path, so the
    // first pass walks only through such vertices. The second pass keeps
    // the rest as a fallback so failures still name the furthest stage.
    let poor: VertexSet = (0..n)
        .filter(|&v| !avoid.contains(v) && available_degree(g, v, avoid) < 3)
        .collect();
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for pass_avoid in [avoid.union(&poor), avoid.clone()] {
        cycles_from_roots(g, &roots, &pass_avoid, opts.k_max, &mut seen, &mut found);
    }
    let is_poor = |c: &Vec<usize>| c.iter().any(|&v| poor.contains(v));
    found.sort_by_key(|c| (is_poor(c), c.len()));
    found
}

fn cycles_from_roots(
    g: &Graph,
    roots: &[usize],
    avoid: &VertexSet,
    k_max: usize,
    seen: &mut BTreeSet<Vec<usize>>,
    found: &mut Vec<Vec<usize>>,
) {
    let n = g.n();
    let mut stamp = alloc::vec![u32::MAX; n];
    let mut dist = alloc::vec![0usize; n];
    let mut parent = alloc::vec![usize::MAX; n];
    let mut queue = Vec::new();
    for (epoch, &root) in roots.iter().enumerate() {
        if avoid.contains(root) {
            continue;
        }
        let epoch = epoch as u32;
        queue.clear();
        queue.push(root);
        stamp[root] = epoch;
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut head = 0;
        let mut per_root = 0;
        'bfs: while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u] + 1 > k_max {
                break;
            }
            for &w in g.neighbors(u) {
                if avoid.contains(w) {
                    continue;
                }
                if stamp[w] != epoch {
                    stamp[w] = epoch;
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                    continue;
                }
                if w == parent[u] || dist[w] < dist[u] || dist[u] + dist[w] + 1 > k_max {
                    continue;
                }
                let cycle = close_cycle(&parent, &dist, u, w);
                let mut key = cycle.clone();
                key.sort_unstable();
                if seen.insert(key) {
                    found.push(cycle);
                    per_root += 1;
                    if per_root >= 4 {
                        break 'bfs;
                    }
                }
            }
        }
    }
}

/// The cycle formed by the tree paths to `u` and `w` and the edge `uw`.
fn close_cycle(parent: &[usize], dist: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = alloc::vec![a];
    let mut right = alloc::vec![b];
    while dist[a] > dist[b] {
        a = parent[a];
        left.push(a);
    }
    while dist[b] > dist[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // Both lists now end at the common ancestor.
    right.pop();
    left.reverse();
    left.extend(right);
    left
}

/// Greedy attachment of paths and legs to `cycle`.
fn attach(
    g: &Graph,
    cycle: &[usize],
    opts: &KrakenSearch,
) -> Result<Kraken, (KrakenStage, alloc::string::String)> {
    let max_len = 10 * opts.s;
    let min_len = opts.separation.saturating_sub(1).div_ceil(2).max(1);
    if max_len < min_len {
        return Err((
            KrakenStage::Paths,
            format!("paths limited to length {max_len}, below {min_len}"),
        ));
    }
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    let mut claimed = on_cycle.clone();
    let halo_radius = opts.separation.saturating_sub(1);
    let mut halo = if opts.keep_away.is_empty() {
        VertexSet::new()
    } else {
        ball(
            g,
            &opts.keep_away.difference(&opts.high),
            halo_radius,
            &opts.high,
        )
    };
    let mut bfs = Bfs::new(g.n());
    let mut ends = Vec::with_capacity(cycle.len());
    let mut legs = Vec::with_capacity(cycle.len());
    let mut paths = Vec::with_capacity(cycle.len());
    for (j, &v) in cycle.iter().enumerate() {
        let blocked = |x: usize| opts.avoid.contains(x) || claimed.contains(x);
        bfs.run(g, [v], max_len, |x| !blocked(x), |_| false);
        let candidates: Vec<usize> = bfs
            .order()
            .iter()
            .copied()
            .filter(|&x| {
                bfs.dist(x).unwrap_or(0) >= min_len && !opts.high.contains(x) && !halo.contains(x)
            })
            .take(16)
            .collect();
        if candidates.is_empty() {
            return Err((
                KrakenStage::Paths,
                format!("no unclaimed end within distance {max_len} of cycle vertex {j}"),
            ));
        }
        let mut placed = None;
        for &u in &candidates {
            let path = bfs.path_to(u);
            let on_path = path.vertex_set();
            let leg = grow_expansion(
                g,
                u,
                |x| {
                    !blocked(x)
                        && !opts.high.contains(x)
                        && !halo.contains(x)
                        && !on_path.contains(x)
                },
                opts.t,
                opts.s,
            );
            if leg.size() == opts.t {
                placed = Some((u, path, leg));
                break;
            }
        }
        let Some((u, path, leg)) = placed else {
            return Err((
                KrakenStage::Legs,
                format!(
                    "no leg of size {} and radius {} for cycle vertex {j}",
                    opts.t, opts.s
                ),
            ));
        };
        claimed.extend(path.vertices().iter().copied());
        claimed.extend(leg.members().iter().copied());
        if halo_radius > 0 {
            halo.extend_from(&ball(g, &leg.member_set(), halo_radius, &opts.high));
        } else {
            halo.extend(leg.members().iter().copied());
        }
        ends.push(u);
        legs.push(Expansion::from_bfs_order(u, leg.members().to_vec(), opts.s));
        paths.push(path);
    }
    Ok(Kraken {
        s: opts.s,
        t: opts.t,
        cycle: Cycle::new(cycle.to_vec()),
        ends,
        legs,
        paths,
    })
}
