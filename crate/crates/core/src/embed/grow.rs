//! Robust growth and connection: short paths between large sets, balls
//! grown past thin obstacles, large balls avoiding a small set, and
//! collective expansion of a family of sets.

use alloc::format;
use alloc::vec::Vec;

use super::expansion::Expansion;
use super::EmbedError;
use crate::expander::{epsilon, ExpanderParams};
use crate::graph::{ball, shortest_path, Bfs, Graph, Path};
use crate::set::VertexSet;

fn ln(x: f64) -> f64 {
    libm::log(x)
}

/// `(40/ε1)·ln³n`.
pub fn short_path_bound(n: usize, params: &ExpanderParams) -> f64 {
    let l = ln(n.max(2) as f64);
    40.0 / params.eps1 * l * l * l
}

/// Shortest `A`–`B` path in `G - W`.
///
/// Only the first vertex lies in `A` and only the last in `B`. When
/// `certified` is set the graph is taken to be an expander for `params` and
/// the length is checked against `(40/ε1)·ln³n`.
pub fn connect_short(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    w: &VertexSet,
    params: &ExpanderParams,
    x: usize,
    certified: bool,
) -> Result<Path, EmbedError> {
    if a.len() < x.max(1) || b.len() < x.max(1) {
        return Err(EmbedError::Precondition(format!(
            "|A| = {}, |B| = {} must both be at least {}",
            a.len(),
            b.len(),
            x.max(1)
        )));
    }
    if !a.is_disjoint(w) || !b.is_disjoint(w) || !a.is_disjoint(b) {
        return Err(EmbedError::Precondition(
            "A, B and W must be pairwise disjoint".into(),
        ));
    }
    let path = shortest_path(g, a, b, w, usize::MAX).ok_or(EmbedError::Disconnected)?;
    let bound = short_path_bound(g.n(), params);
    if certified && path.len() as f64 > bound {
        return Err(EmbedError::BoundExceeded {
            length: path.len(),
            bound,
        });
    }
    Ok(path)
}

/// Per-step record showing how much an obstacle set touches the growing
/// ball around `around`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinSetWitness {
    pub around: VertexSet,
    pub thin_set: VertexSet,
    pub lambda: f64,
    pub k: u32,
    /// `trace[i-1] = |N(B^{i-1}_{G-Y-X}(A)) ∩ X|` for `i = 1..=r`.
    pub trace: Vec<usize>,
}

impl ThinSetWitness {
    /// First `i` (1-based) with `trace[i] > λ·i^k`.
    pub fn first_violation(&self) -> Option<usize> {
        self.trace
            .iter()
            .enumerate()
            .map(|(i, &t)| (i + 1, t))
            .find(|&(i, t)| t as f64 > self.lambda * libm::pow(i as f64, self.k as f64))
            .map(|(i, _)| i)
    }

    pub fn is_thin(&self) -> bool {
        self.first_violation().is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThinGrowth {
    /// `B^r_{G-W-Y}(X)`.
    pub ball: VertexSet,
    /// `sizes[i] = |B^i_{G-W-Y}(X)|` for `i = 0..=r`.
    pub sizes: Vec<usize>,
    pub witness: ThinSetWitness,
    /// Whether `|B^r| ≥ exp(r^{1/4})`.
    pub met_bound: bool,
}

/// `exp(r^{1/4})`.
pub fn growth_bound(r: usize) -> f64 {
    libm::exp(libm::pow(r as f64, 0.25))
}

/// Grows `X` for `r` steps in `G - W - Y`, recording how much `W` touches
/// each ball along the way. Falling short of `exp(r^{1/4})` is reported in
/// the result, not treated as an error.
#[allow(clippy::too_many_arguments)]
pub fn grow_past_thin(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    w: &VertexSet,
    r: usize,
    params: &ExpanderParams,
    lambda: f64,
    k: u32,
) -> Result<ThinGrowth, EmbedError> {
    if x.is_empty() {
        return Err(EmbedError::Precondition("X must be nonempty".into()));
    }
    let allowance = epsilon(x.len() as f64, params) * x.len() as f64 / 4.0;
    if y.len() as f64 > allowance {
        return Err(EmbedError::Precondition(format!(
            "|Y| = {} exceeds ε(|X|)·|X|/4 = {allowance:.4}",
            y.len()
        )));
    }
    if r == 0 || r as f64 > ln(g.n().max(1) as f64) {
        return Err(EmbedError::Precondition(format!(
            "r = {r} must lie in [1, ln n]"
        )));
    }
    if !x.is_disjoint(w) {
        return Err(EmbedError::Precondition("thin set meets X".into()));
    }
    let (order, sizes, trace) = grow_with_trace(g, x, y, w, r);
    let final_size = sizes[r];
    Ok(ThinGrowth {
        ball: order.into_iter().collect(),
        sizes,
        witness: ThinSetWitness {
            around: x.clone(),
            thin_set: w.clone(),
            lambda,
            k,
            trace,
        },
        met_bound: final_size as f64 >= growth_bound(r),
    })
}

/// Centre candidates: decreasing degree, ties by id.
fn candidates(g: &Graph, avoid: &VertexSet) -> Vec<usize> {
    let mut c: Vec<usize> = (0..g.n()).filter(|&v| !avoid.contains(v)).collect();
    c.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    c
}

/// A ball of size at least `n/25` and radius at most `200·ln³n/ε1` in
/// `G - W`, from the first centre in candidate order that reaches it.
pub fn find_large_ball(
    g: &Graph,
    w: &VertexSet,
    params: &ExpanderParams,
) -> Result<Expansion, EmbedError> {
    let n = g.n();
    let l = ln(n.max(2) as f64);
    let cap = params.eps1 * n as f64 / (100.0 * l * l);
    if w.len() as f64 > cap {
        return Err(EmbedError::Precondition(format!(
            "|W| = {} exceeds ε1·n/(100·ln²n) = {cap:.3}",
            w.len()
        )));
    }
    let target = n.div_ceil(25).max(1);
    let radius = libm::floor(200.0 * l * l * l / params.eps1) as usize;
    find_ball(g, w, target, radius)
}

/// The ball `B^r_{G-W}(c)` for the first candidate centre `c` whose ball
/// reaches `target` vertices within `max_radius`; `r` is the first radius
/// at which it does.
pub fn find_ball(
    g: &Graph,
    w: &VertexSet,
    target: usize,
    max_radius: usize,
) -> Result<Expansion, EmbedError> {
    let mut bfs = Bfs::new(g.n());
    let mut dead = VertexSet::with_capacity(g.n());
    let mut best = 0;
    for c in candidates(g, w) {
        if dead.contains(c) {
            continue;
        }
        let mut count = 0;
        let hit = bfs.run(
            g,
            [c],
            max_radius,
            |v| !w.contains(v),
            |_| {
                count += 1;
                count >= target
            },
        );
        match hit {
            Some(last) => {
                let r = bfs.dist(last).unwrap_or(0);
                let members = ball(g, &VertexSet::singleton(c), r, w);
                let e = Expansion::from_members(g, c, &members, r).map_err(|d| {
                    EmbedError::Internal(format!("ball is not an expansion: {d:?}"))
                })?;
                return Ok(e);
            }
            None => {
                best = best.max(bfs.order().len());
                // The whole component was explored and is too small.
                if bfs.layer_ends().len() <= max_radius {
                    for &v in bfs.order() {
                        dead.insert(v);
                    }
                }
            }
        }
    }
    Err(EmbedError::NoLargeBall { best, target })
}

/// One member `(A_i, B_i, C_i)` of a family for collective expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectiveSet {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

/// Grows every `A_i` for `l0` steps in `G - U - B_i - C_i` and returns the
/// lowest index whose ball reaches `threshold`, with that ball.
pub fn expand_collectively(
    g: &Graph,
    u: &VertexSet,
    family: &[CollectiveSet],
    l0: usize,
    threshold: usize,
) -> Result<(usize, VertexSet), EmbedError> {
    if family.is_empty() {
        return Err(EmbedError::Precondition("family is empty".into()));
    }
    for (i, m) in family.iter().enumerate() {
        if !m.a.is_disjoint(&m.b) || !m.a.is_disjoint(&m.c) || !m.a.is_disjoint(u) {
            return Err(EmbedError::Precondition(format!(
                "A_{i} meets U, B_{i} or C_{i}"
            )));
        }
    }
    let mut bfs = Bfs::new(g.n());
    let mut sizes = Vec::with_capacity(family.len());
    for (i, m) in family.iter().enumerate() {
        let blocked = |v: usize| u.contains(v) || m.b.contains(v) || m.c.contains(v);
        bfs.run(g, m.a.iter(), l0, |v| !blocked(v), |_| false);
        let size = bfs.order().len();
        if size >= threshold {
            return Ok((i, bfs.visited_set()));
        }
        sizes.push(size);
    }
    Err(EmbedError::CollectiveFailed { sizes })
}

/// Which of the collective-expansion hypotheses a family member violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hypothesis {
    /// `|A_i|` large enough.
    A1,
    /// `A_i`, `B_i ∪ C_i` disjoint outside `U`, and `B_i` small.
    A2,
    /// `C_i` thin around `A_i` in `G - U - B_i`.
    A3,
    /// Vertices near `A_i` have few neighbours in `U`.
    A4,
    /// Different `A_i` far apart.
    A5,
}

/// Desk-scale forms of the collective-expansion hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveBounds {
    pub l0: usize,
    pub min_a: usize,
    /// `|B_i| ≤ b_ratio·|A_i|`.
    pub b_ratio: f64,
    /// Thinness `λ`; `None` means `√|A_i|`.
    pub lambda: Option<f64>,
    /// Steps over which thinness is checked.
    pub thin_steps: usize,
    /// Maximum neighbours in `U`, usually `d/2`.
    pub u_degree: usize,
}

/// Checks each member against the hypotheses and lists the failures as
/// `(index, hypothesis)` pairs. Nothing is enforced.
pub fn collective_hypotheses(
    g: &Graph,
    u: &VertexSet,
    family: &[CollectiveSet],
    bounds: &CollectiveBounds,
) -> Vec<(usize, Hypothesis)> {
    let mut out = Vec::new();
    let mut bfs = Bfs::new(g.n());
    for (i, m) in family.iter().enumerate() {
        if m.a.len() < bounds.min_a {
            out.push((i, Hypothesis::A1));
        }
        let disjoint = m.a.is_disjoint(&m.b)
            && m.a.is_disjoint(&m.c)
            && m.a.is_disjoint(u)
            && m.b.is_disjoint(u)
            && m.c.is_disjoint(u);
        if !disjoint || m.b.len() as f64 > bounds.b_ratio * m.a.len() as f64 {
            out.push((i, Hypothesis::A2));
        }
        let lambda = bounds
            .lambda
            .unwrap_or_else(|| libm::sqrt(m.a.len() as f64));
        let y = u.union(&m.b);
        let (_, _, trace) = grow_with_trace(g, &m.a, &y, &m.c, bounds.thin_steps.max(1));
        let witness = ThinSetWitness {
            around: m.a.clone(),
            thin_set: m.c.clone(),
            lambda,
            k: 1,
            trace,
        };
        if !witness.is_thin() {
            out.push((i, Hypothesis::A3));
        }
        let blocked = |v: usize| u.contains(v) || m.b.contains(v) || m.c.contains(v);
        bfs.run(g, m.a.iter(), bounds.l0, |v| !blocked(v), |_| false);
        let crowded = bfs
            .order()
            .iter()
            .any(|&v| g.neighbors(v).iter().filter(|&&x| u.contains(x)).count() > bounds.u_degree);
        if crowded {
            out.push((i, Hypothesis::A4));
        }
    }
    let reach = (2 * bounds.l0).saturating_sub(1);
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let (mi, mj) = (&family[i], &family[j]);
            let blocked = |v: usize| {
                u.contains(v)
                    || mi.b.contains(v)
                    || mi.c.contains(v)
                    || mj.b.contains(v)
                    || mj.c.contains(v)
            };
            let near = bfs
                .run(g, mi.a.iter(), reach, |v| !blocked(v), |v| mj.a.contains(v))
                .is_some();
            if near {
                out.push((i, Hypothesis::A5));
                out.push((j, Hypothesis::A5));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// BFS from `a` in `G - Y - W` for `steps` layers: discovery order, ball
/// sizes per radius, and the thinness trace of `W`.
fn grow_with_trace(
    g: &Graph,
    a: &VertexSet,
    y: &VertexSet,
    w: &VertexSet,
    steps: usize,
) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut bfs = Bfs::new(g.n());
    bfs.run(
        g,
        a.iter(),
        steps,
        |v| !w.contains(v) && !y.contains(v),
        |_| false,
    );
    let ends = bfs.layer_ends();
    let at = |i: usize| ends.get(i).or(ends.last()).copied().unwrap_or(0);
    let sizes: Vec<usize> = (0..=steps).map(at).collect();
    let order = bfs.order().to_vec();
    let mut touched = VertexSet::with_capacity(g.n());
    let mut trace = Vec::with_capacity(steps);
    let mut done = 0;
    for i in 1..=steps {
        let upto = sizes[i - 1];
        for &u in &order[done..upto] {
            for &v in g.neighbors(u) {
                if w.contains(v) && !y.contains(v) {
                    touched.insert(v);
                }
            }
        }
        done = upto;
        trace.push(touched.len());
    }
    (order, sizes, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use alloc::vec;

    fn params() -> ExpanderParams {
        ExpanderParams::new(0.1, 0.2, 10).unwrap()
    }

    #[test]
    fn connect_short_examples() {
        let k = generate(GraphKind::RandomBipartite {
            a: 10,
            b: 10,
            p: 1.0,
            seed: 0,
        })
        .unwrap();
        let p = connect_short(
            &k,
            &VertexSet::singleton(0),
            &VertexSet::singleton(1),
            &VertexSet::new(),
            &params(),
            1,
            true,
        )
        .unwrap();
        assert_eq!(p.len(), 2);

        let path = generate(GraphKind::Path { n: 10 }).unwrap();
        assert_eq!(
            connect_short(
                &path,
                &VertexSet::singleton(0),
                &VertexSet::singleton(9),
                &VertexSet::singleton(5),
                &params(),
                1,
                false,
            ),
            Err(EmbedError::Disconnected)
        );
    }

    #[test]
    fn connect_short_interior_avoids_endpoint_sets() {
        let g = generate(GraphKind::Hypercube { dim: 4 }).unwrap();
        let a: VertexSet = [0, 1, 2].into_iter().collect();
        let b: VertexSet = [15, 14, 13].into_iter().collect();
        let p = connect_short(&g, &a, &b, &VertexSet::new(), &params(), 3, true).unwrap();
        assert_eq!(p.validate(&g), Ok(()));
        assert!(a.contains(p.start()) && b.contains(p.end()));
        assert!(p
            .interior()
            .iter()
            .all(|&v| !a.contains(v) && !b.contains(v)));
    }

    #[test]
    fn path_endpoint_growth_falls_short() {
        let g = generate(GraphKind::Path { n: 10 }).unwrap();
        let x = VertexSet::singleton(0);
        let none = VertexSet::new();
        let grown = grow_past_thin(&g, &x, &none, &none, 2, &params(), 1.0, 1).unwrap();
        assert_eq!(grown.sizes, vec![1, 2, 3]);
        assert!(!grown.met_bound);
        assert!(grow_past_thin(&g, &x, &none, &none, 3, &params(), 1.0, 1).is_err());
    }

    #[test]
    fn far_thin_set_leaves_zero_trace() {
        let g = generate(GraphKind::Hypercube { dim: 6 }).unwrap();
        let x = VertexSet::singleton(0);
        let w = VertexSet::singleton(63);
        let grown = grow_past_thin(&g, &x, &VertexSet::new(), &w, 4, &params(), 1e-9, 1).unwrap();
        assert_eq!(grown.witness.trace, vec![0, 0, 0, 0]);
        assert!(grown.witness.is_thin());
        assert!(grown.met_bound);
    }

    #[test]
    fn y_allowance_enforced() {
        let g = generate(GraphKind::Hypercube { dim: 6 }).unwrap();
        let x = VertexSet::singleton(0);
        let y = VertexSet::singleton(5);
        assert!(matches!(
            grow_past_thin(&g, &x, &y, &VertexSet::new(), 2, &params(), 1.0, 1),
            Err(EmbedError::Precondition(_))
        ));
    }

    #[test]
    fn large_ball_on_connected_graph() {
        let g = generate(GraphKind::Hypercube { dim: 8 }).unwrap();
        let e = find_large_ball(&g, &VertexSet::new(), &params()).unwrap();
        assert_eq!(e.center(), 0);
        assert!(e.size() * 25 >= g.n());
        assert_eq!(e.validate(&g), Ok(()));
        let w: VertexSet = (0..10).collect();
        assert!(matches!(
            find_large_ball(&g, &w, &params()),
            Err(EmbedError::Precondition(_))
        ));
    }

    #[test]
    fn collective_examples() {
        let g = generate(GraphKind::Hypercube { dim: 4 }).unwrap();
        let whole = CollectiveSet {
            a: VertexSet::full(16),
            b: VertexSet::new(),
            c: VertexSet::new(),
        };
        assert_eq!(
            expand_collectively(&g, &VertexSet::new(), &[whole], 1, 1)
                .unwrap()
                .0,
            0
        );
        let empty = Graph::empty(3);
        let family: Vec<_> = (0..3)
            .map(|v| CollectiveSet {
                a: VertexSet::singleton(v),
                b: VertexSet::new(),
                c: VertexSet::new(),
            })
            .collect();
        assert_eq!(
            expand_collectively(&empty, &VertexSet::new(), &family, 3, 2),
            Err(EmbedError::CollectiveFailed {
                sizes: vec![1, 1, 1]
            })
        );
    }

    #[test]
    fn single_member_matches_ball() {
        let g = generate(GraphKind::Hypercube { dim: 5 }).unwrap();
        let u: VertexSet = [1, 2].into_iter().collect();
        let m = CollectiveSet {
            a: VertexSet::singleton(0),
            b: VertexSet::singleton(4),
            c: VertexSet::singleton(8),
        };
        let (_, got) = expand_collectively(&g, &u, core::slice::from_ref(&m), 3, 1)
            .unwrap_or((0, VertexSet::new()));
        let avoid = u.union(&m.b).union(&m.c);
        let expected = ball(&g, &m.a, 3, &avoid);
        assert!(got.is_subset(&expected));
        let (_, full) = expand_collectively(&g, &u, &[m], 3, expected.len()).unwrap();
        assert_eq!(full, expected);
    }

    #[test]
    fn hypotheses_flag_close_members() {
        let g = generate(GraphKind::Hypercube { dim: 4 }).unwrap();
        let family = vec![
            CollectiveSet {
                a: VertexSet::singleton(0),
                b: VertexSet::new(),
                c: VertexSet::new(),
            },
            CollectiveSet {
                a: VertexSet::singleton(1),
                b: VertexSet::new(),
                c: VertexSet::new(),
            },
        ];
        let bounds = CollectiveBounds {
            l0: 2,
            min_a: 1,
            b_ratio: 1.0,
            lambda: None,
            thin_steps: 3,
            u_degree: 2,
        };
        let fails = collective_hypotheses(&g, &VertexSet::new(), &family, &bounds);
        assert_eq!(fails, vec![(0, Hypothesis::A5), (1, Hypothesis::A5)]);
    }
}
