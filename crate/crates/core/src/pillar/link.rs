//! Joining two krakens with equal cycle length by `s` disjoint paths of one
//! length, matching cycle vertices in order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::connect::{connect_fixed_length, FixedLengthError, FixedLengthOptions};
use crate::config::PipelineConfig;
use crate::embed::{grow_expansion, Expansion};
use crate::graph::{ball, parity, Bfs, Graph, Path};
use crate::kraken::{check_separation, Kraken};
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkSide {
    Alpha,
    Beta,
    Both,
}

/// How the set around a cycle vertex was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkCase {
    /// End in `L`: its neighbourhood plus the private path.
    EndInL,
    /// Leg grown `ℓ0` steps without meeting `L`.
    Clean,
    /// Grown leg meets `L`: a shortest path to `L` and the neighbourhood of
    /// its last vertex.
    MeetsL,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinkError {
    Precondition(String),
    Failed {
        j: usize,
        side: LinkSide,
        case: (LinkCase, LinkCase),
        detail: String,
    },
    /// Output paths failed the structural check.
    Internal(String),
}

impl fmt::Display for LinkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkError::Precondition(m) => write!(f, "precondition failed: {m}"),
            LinkError::Failed {
                j,
                side,
                case,
                detail,
            } => write!(
                f,
                "linking failed at j = {j} ({side:?} side, cases {:?}/{:?}): {detail}",
                case.0, case.1
            ),
            LinkError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl core::error::Error for LinkError {}

/// `s` paths `Q_j` from `v_j^α` to `v_j^β` of length `ell`, pairwise
/// disjoint and internally disjoint from both cycles.
///
/// For each `j` in turn the two sides are grown into sets around `v_j`
/// (see [`LinkCase`]), trimmed to expansions of `v_j` that avoid what is
/// still reserved (earlier `Q`s, later paths and legs), and joined by
/// [`connect_fixed_length`].
pub fn link_krakens(
    g: &Graph,
    ka: &Kraken,
    kb: &Kraken,
    ell: usize,
    high: &VertexSet,
    config: &PipelineConfig,
) -> Result<Vec<Path>, LinkError> {
    let s = ka.k();
    if kb.k() != s {
        return Err(LinkError::Precondition(format!(
            "cycle lengths differ: {s} and {}",
            kb.k()
        )));
    }
    if !ka.vertex_set().is_disjoint(&kb.vertex_set()) {
        return Err(LinkError::Precondition("krakens intersect".into()));
    }
    let (v1a, v1b) = (ka.cycle.vertices()[0], kb.cycle.vertices()[0]);
    if let Ok(p) = parity(g, v1a, v1b) {
        if ell % 2 != p as usize {
            return Err(LinkError::Precondition(format!(
                "length {ell} does not match the parity {p} of the first cycle vertices"
            )));
        }
    }
    let l0 = config.ell0;
    // Legs more than ℓ0 apart cannot be reached by a grown leg.
    let separated = {
        let mut both = ka.clone();
        both.legs.extend(kb.legs.iter().cloned());
        both.ends.extend(kb.ends.iter().copied());
        both.paths.extend(kb.paths.iter().cloned());
        check_separation(g, &both, high, &VertexSet::new(), l0 + 1).is_empty()
    };
    let opts = FixedLengthOptions::from_config(config);
    let sides = [ka, kb];
    let mut cycles = ka.cycle.vertex_set();
    cycles.extend_from(&kb.cycle.vertex_set());
    let mut fixed = cycles.clone();
    for kr in sides {
        for p in &kr.paths {
            fixed.extend(p.vertices().iter().copied());
        }
    }
    let mut built: Vec<Path> = Vec::with_capacity(s);
    let mut built_set = VertexSet::new();
    for j in 0..s {
        let z = fixed.union(&built_set);
        let mut reserved = built_set.clone();
        let mut unused_legs = VertexSet::new();
        for kr in sides {
            for i in j + 1..s {
                reserved.extend(kr.paths[i].vertices().iter().copied());
                let leg = kr.leg_set(i);
                if !high.contains(kr.ends[i]) {
                    unused_legs.extend_from(&leg);
                }
                reserved.extend_from(&leg);
            }
        }
        let mut xs = [VertexSet::new(), VertexSet::new()];
        let mut cases = [LinkCase::Clean; 2];
        for (side, kr) in sides.iter().enumerate() {
            let which = if side == 0 {
                LinkSide::Alpha
            } else {
                LinkSide::Beta
            };
            let (x, case) = side_set(g, kr, j, &z, &unused_legs, high, l0, separated).map_err(
                |(case, detail)| LinkError::Failed {
                    j,
                    side: which,
                    case: (case, case),
                    detail,
                },
            )?;
            xs[side] = x;
            cases[side] = case;
        }
        let va = ka.cycle.vertices()[j];
        let vb = kb.cycle.vertices()[j];
        let fa = trim_around(g, va, &xs[0].difference(&reserved), vb, config.link_size);
        let fb_allowed = xs[1].difference(&reserved).difference(&fa.member_set());
        let fb = trim_around(g, vb, &fb_allowed, usize::MAX, config.link_size);
        let mut avoid = reserved.clone();
        avoid.extend_from(&cycles);
        avoid.remove(va);
        avoid.remove(vb);
        let q = connect_fixed_length(g, &fa, &fb, ell, &avoid, &opts).map_err(|e| {
            LinkError::Failed {
                j,
                side: LinkSide::Both,
                case: (cases[0], cases[1]),
                detail: match e {
                    FixedLengthError::NotRealized { .. } => format!("{e}"),
                    other => format!("{other}"),
                },
            }
        })?;
        built_set.extend(q.vertices().iter().copied());
        built.push(q);
    }
    check_links(g, ka, kb, &built, ell)?;
    Ok(built)
}

/// The set `X` on one side at step `j`, and which case produced it.
#[allow(clippy::too_many_arguments)]
fn side_set(
    g: &Graph,
    kr: &Kraken,
    j: usize,
    z: &VertexSet,
    unused_legs: &VertexSet,
    high: &VertexSet,
    l0: usize,
    separated: bool,
) -> Result<(VertexSet, LinkCase), (LinkCase, String)> {
    let u = kr.ends[j];
    let on_path = kr.paths[j].vertex_set();
    if high.contains(u) {
        let mut x: VertexSet = g.neighbors(u).iter().copied().collect();
        x.extend_from(&on_path);
        return Ok((x, LinkCase::EndInL));
    }
    let leg = kr.leg_set(j);
    let mut grown = ball(g, &leg, l0, z);
    if !grown.is_disjoint(unused_legs) {
        if separated {
            return Err((
                LinkCase::Clean,
                "grown leg meets an unused leg although legs are separated".into(),
            ));
        }
        grown = ball(g, &leg, l0, &z.union(unused_legs));
    }
    if grown.is_disjoint(high) {
        return Ok((grown.union(&on_path), LinkCase::Clean));
    }
    let mut bfs = Bfs::new(g.n());
    let hit = bfs.run(
        g,
        [u],
        usize::MAX,
        |v| grown.contains(v),
        |v| high.contains(v),
    );
    let Some(w) = hit else {
        return Err((
            LinkCase::MeetsL,
            "no path from the end to L inside the grown leg".into(),
        ));
    };
    let mut x = bfs.path_to(w).vertex_set();
    x.extend(g.neighbors(w).iter().copied());
    x.extend_from(&on_path);
    Ok((x, LinkCase::MeetsL))
}

/// Expansion of `center` in `G[allowed ∪ {center}]` with at most `size`
/// members, never containing `forbid`.
fn trim_around(
    g: &Graph,
    center: usize,
    allowed: &VertexSet,
    forbid: usize,
    size: usize,
) -> Expansion {
    grow_expansion(
        g,
        center,
        |v| v != forbid && allowed.contains(v),
        size.max(1),
        usize::MAX,
    )
}

fn check_links(
    g: &Graph,
    ka: &Kraken,
    kb: &Kraken,
    paths: &[Path],
    ell: usize,
) -> Result<(), LinkError> {
    let mut cycles = ka.cycle.vertex_set();
    cycles.extend_from(&kb.cycle.vertex_set());
    let mut seen = VertexSet::new();
    for (j, q) in paths.iter().enumerate() {
        let bad = |m: &str| Err(LinkError::Internal(format!("path {j}: {m}")));
        if q.validate(g).is_err() {
            return bad("not a path");
        }
        if q.len() != ell {
            return bad("wrong length");
        }
        if q.start() != ka.cycle.vertices()[j] || q.end() != kb.cycle.vertices()[j] {
            return bad("wrong endpoints");
        }
        if q.interior().iter().any(|&v| cycles.contains(v)) {
            return bad("passes through a cycle");
        }
        for &v in q.vertices() {
            if !seen.insert(v) {
                return bad("meets an earlier path");
            }
        }
    }
    Ok(())
}
