//! Sublinear expansion: the rate function `ε(x)`, checking a graph against
//! the `(ε1, k)`-expander condition, and extracting a bipartite expander
//! subgraph of prescribed minimum degree.
//!
//! The condition quantifies over every medium-size set `X` and every
//! small edge set `F`. For a fixed `X`, the best `F` is found exactly: it
//! deletes all edges from `X` to the outside neighbours that have the fewest
//! edges into `X`, cheapest first, until the budget runs out. What cannot be
//! done at scale is enumerating `X`, so large graphs are checked by sampling
//! connected sets.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Subgraph};
use crate::set::VertexSet;

/// Largest graph the exact mode will enumerate.
pub const EXACT_MODE_CAP: usize = 20;
pub const DEFAULT_TRIALS: usize = 500;

#[derive(Debug, Clone, PartialEq)]
pub enum ExpanderError {
    InvalidParams(String),
    ExactModeOverCap { n: usize, cap: usize },
    DegreeHypothesis { average: f64, required: f64 },
    NoExpander { d: usize },
}

impl fmt::Display for ExpanderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpanderError::InvalidParams(msg) => write!(f, "invalid expander parameters: {msg}"),
            ExpanderError::ExactModeOverCap { n, cap } => write!(
                f,
                "exact mode enumerates subsets and is capped at {cap} vertices (graph has {n}); use sampled mode"
            ),
            ExpanderError::DegreeHypothesis { average, required } => write!(
                f,
                "average degree {average:.3} is below the required {required:.3}"
            ),
            ExpanderError::NoExpander { d } => write!(f, "no expander found at this d ({d})"),
        }
    }
}

impl core::error::Error for ExpanderError {}

/// `(ε1, ε2, d)` with derived `k = ε2·d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpanderParams {
    pub eps1: f64,
    pub eps2: f64,
    pub d: usize,
}

impl ExpanderParams {
    pub fn new(eps1: f64, eps2: f64, d: usize) -> Result<Self, ExpanderError> {
        let p = ExpanderParams { eps1, eps2, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ExpanderError> {
        if !(self.eps1 > 0.0 && self.eps1 < 1.0) {
            return Err(ExpanderError::InvalidParams(
                "eps1 must lie in (0, 1)".into(),
            ));
        }
        if !(self.eps2 > 0.0 && self.eps2 <= 0.2) {
            return Err(ExpanderError::InvalidParams(
                "eps2 must lie in (0, 1/5]".into(),
            ));
        }
        if self.d == 0 {
            return Err(ExpanderError::InvalidParams("d must be at least 1".into()));
        }
        Ok(())
    }

    pub fn k(&self) -> f64 {
        self.eps2 * self.d as f64
    }

    /// Same `ε1, ε2` at a different degree parameter.
    pub fn with_degree(&self, d: usize) -> Self {
        ExpanderParams {
            d: d.max(1),
            ..*self
        }
    }
}

/// `ε(x) = 0` for `x < k/5`, else `ε1 / ln²(15x/k)`.
pub fn epsilon(x: f64, params: &ExpanderParams) -> f64 {
    let k = params.k();
    if x < k / 5.0 {
        0.0
    } else {
        let l = libm::log(15.0 * x / k);
        params.eps1 / (l * l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    Sampled { seed: u64, trials: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckedMode {
    Exact,
    Sampled,
}

/// A set `X` and edge set `F` with `|N_{G∖F}(X)| < ε(|X|)·|X|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionWitness {
    pub set: VertexSet,
    /// `F`; empty when `X` fails without any deletion.
    pub removed_edges: Vec<(usize, usize)>,
    /// `|N_{G∖F}(X)|`.
    pub neighborhood: usize,
    /// `ε(|X|)·|X|`.
    pub required: f64,
}

/// Outcome of [`check_expansion`]. The robust part of the condition is
/// covered per set exactly, but only for the sets that were examined.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub params: ExpanderParams,
    pub mode: CheckedMode,
    /// Sets examined (exact) or trials drawn (sampled).
    pub samples: usize,
    pub witness: Option<ExpansionWitness>,
}

impl ExpansionReport {
    pub fn is_clean(&self) -> bool {
        self.witness.is_none()
    }
}

/// Smallest and largest admissible `|X|`: `k/2 ≤ |X| ≤ n/2`.
pub fn admissible_sizes(n: usize, params: &ExpanderParams) -> (usize, usize) {
    let lo = libm::ceil(params.k() / 2.0).max(1.0) as usize;
    (lo, n / 2)
}

/// `⌊d(G)·ε(|X|)·|X|⌋`, the number of edges the adversary may delete.
pub fn deletion_budget(g: &Graph, size: usize, params: &ExpanderParams) -> usize {
    let b = g.average_degree() * epsilon(size as f64, params) * size as f64;
    libm::floor(b + 1e-9) as usize
}

/// Checks `X` against the expansion condition, without deletions when
/// `robust` is false and against the strongest admissible `F` otherwise.
pub fn violation_for(
    g: &Graph,
    set: &VertexSet,
    params: &ExpanderParams,
    robust: bool,
) -> Option<ExpansionWitness> {
    let size = set.len();
    let required = epsilon(size as f64, params) * size as f64;
    // (edges into X, outside vertex)
    let mut count = vec![0usize; g.n()];
    let mut outside: Vec<usize> = Vec::new();
    for u in set {
        for &y in g.neighbors(u) {
            if !set.contains(y) {
                if count[y] == 0 {
                    outside.push(y);
                }
                count[y] += 1;
            }
        }
    }
    let mut outside: Vec<(usize, usize)> = outside.into_iter().map(|y| (count[y], y)).collect();
    let mut removed = Vec::new();
    let mut remaining = outside.len();
    if robust {
        let mut budget = deletion_budget(g, size, params);
        outside.sort_unstable();
        for &(cost, y) in &outside {
            if cost > budget {
                break;
            }
            budget -= cost;
            remaining -= 1;
            for &x in g.neighbors(y) {
                if set.contains(x) {
                    removed.push((x.min(y), x.max(y)));
                }
            }
        }
        removed.sort_unstable();
    }
    ((remaining as f64) < required).then(|| ExpansionWitness {
        set: set.clone(),
        removed_edges: removed,
        neighborhood: remaining,
        required,
    })
}

pub fn check_expansion(
    g: &Graph,
    params: &ExpanderParams,
    mode: CheckMode,
) -> Result<ExpansionReport, ExpanderError> {
    params.validate()?;
    match mode {
        CheckMode::Exact => check_exact(g, params, EXACT_MODE_CAP),
        CheckMode::Sampled { seed, trials } => {
            let witness = (0..trials).find_map(|t| sample_trial(g, params, seed, t));
            Ok(ExpansionReport {
                params: *params,
                mode: CheckedMode::Sampled,
                samples: trials,
                witness,
            })
        }
    }
}

/// Exhaustive check: first every admissible `X` with `F = ∅`, then every
/// `X` against the greedy adversary. Sets are visited by size, then in
/// lexicographic order, so the reported witness is deterministic.
pub fn check_exact(
    g: &Graph,
    params: &ExpanderParams,
    cap: usize,
) -> Result<ExpansionReport, ExpanderError> {
    let n = g.n();
    if n > cap {
        return Err(ExpanderError::ExactModeOverCap { n, cap });
    }
    let (lo, hi) = admissible_sizes(n, params);
    let mut samples = 0;
    for robust in [false, true] {
        for size in lo..=hi {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                if !robust {
                    samples += 1;
                }
                let set: VertexSet = combo.iter().copied().collect();
                if let Some(w) = violation_for(g, &set, params, robust) {
                    return Ok(ExpansionReport {
                        params: *params,
                        mode: CheckedMode::Exact,
                        samples,
                        witness: Some(w),
                    });
                }
                if !next_combination(&mut combo, n) {
                    break;
                }
            }
        }
    }
    Ok(ExpansionReport {
        params: *params,
        mode: CheckedMode::Exact,
        samples,
        witness: None,
    })
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One sampled trial: a connected set grown by randomised BFS to a random
/// admissible size. Each trial has its own ChaCha stream of `seed`, so
/// trials can run in any order and still agree.
pub fn sample_trial(
    g: &Graph,
    params: &ExpanderParams,
    seed: u64,
    trial: usize,
) -> Option<ExpansionWitness> {
    let n = g.n();
    let (lo, hi) = admissible_sizes(n, params);
    if n == 0 || lo > hi {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let target = rng.gen_range(lo..=hi);
    let start = rng.gen_range(0..n);
    let mut set = VertexSet::with_capacity(n);
    let mut queue = VecDeque::new();
    set.insert(start);
    queue.push_back(start);
    let mut scratch = Vec::new();
    'grow: while let Some(u) = queue.pop_front() {
        scratch.clear();
        scratch.extend_from_slice(g.neighbors(u));
        scratch.shuffle(&mut rng);
        for &v in &scratch {
            if set.len() >= target {
                break 'grow;
            }
            if set.insert(v) {
                queue.push_back(v);
            }
        }
    }
    if set.len() < lo {
        return None;
    }
    violation_for(g, &set, params, false).or_else(|| violation_for(g, &set, params, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Target minimum degree `d` of the extracted subgraph.
    pub min_degree: usize,
    /// Reject inputs with `d(G) < 8d`.
    pub enforce_average_degree: bool,
    pub trials: usize,
    pub seed: u64,
    pub max_rounds: usize,
}

impl ExtractOptions {
    pub fn new(min_degree: usize, seed: u64) -> Self {
        ExtractOptions {
            min_degree,
            enforce_average_degree: true,
            trials: DEFAULT_TRIALS,
            seed,
            max_rounds: 64,
        }
    }
}

/// Bipartite subgraph `H` with `δ(H) ≥ d` that passes the sampled
/// expansion check.
///
/// The graph is first made bipartite by a max-cut colouring (BFS
/// two-colouring improved by single-vertex flips), keeping only crossing
/// edges. Then, round by round: peel vertices of degree below `d`, sample
/// for a violating set `X`, and if one is found continue in whichever of
/// `H[X]` and `H - X` has larger average degree.
pub fn extract_expander(
    g: &Graph,
    params: &ExpanderParams,
    opts: &ExtractOptions,
) -> Result<Subgraph, ExpanderError> {
    params.validate()?;
    let d = opts.min_degree;
    let required = 8.0 * d as f64;
    if opts.enforce_average_degree && g.average_degree() < required {
        return Err(ExpanderError::DegreeHypothesis {
            average: g.average_degree(),
            required,
        });
    }
    let mut current = bipartite_part(g, opts.seed);
    for round in 0..opts.max_rounds {
        let core = peel(&current.graph, d);
        if core.is_empty() {
            return Err(ExpanderError::NoExpander { d });
        }
        if core.len() < current.graph.n() {
            current = current.compose(current.graph.induced(&core));
        }
        let report = check_expansion(
            &current.graph,
            params,
            CheckMode::Sampled {
                seed: opts.seed.wrapping_add(round as u64),
                trials: opts.trials,
            },
        )?;
        let Some(witness) = report.witness else {
            return Ok(current);
        };
        let inside = witness.set;
        let outside = VertexSet::full(current.graph.n()).difference(&inside);
        let density = |s: &VertexSet| {
            if s.is_empty() {
                -1.0
            } else {
                2.0 * current.graph.edges_within(s) as f64 / s.len() as f64
            }
        };
        let keep = if density(&inside) > density(&outside) {
            inside
        } else {
            outside
        };
        current = current.compose(current.graph.induced(&keep));
    }
    Err(ExpanderError::NoExpander { d })
}

/// Vertices of the `d`-core.
pub fn peel(g: &Graph, d: usize) -> VertexSet {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = VertexSet::full(n);
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < d).collect();
    for &v in &stack {
        alive.remove(v);
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive.contains(w) {
                degree[w] -= 1;
                if degree[w] < d {
                    alive.remove(w);
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// Spanning bipartite subgraph. Bipartite inputs are returned whole;
/// otherwise each component is two-coloured by BFS from a seeded root and
/// vertices with more same-side than cross-side neighbours are flipped
/// until none remain.
pub fn bipartite_part(g: &Graph, seed: u64) -> Subgraph {
    if g.is_bipartite() {
        return Subgraph::identity(g.clone());
    }
    let side = max_cut_colouring(g, seed);
    g.filtered(&VertexSet::full(g.n()), |u, v| side[u] != side[v])
}

pub fn max_cut_colouring(g: &Graph, seed: u64) -> Vec<bool> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); g.component_count()];
    for v in 0..n {
        members[g.component(v)].push(v);
    }
    let mut side = vec![false; n];
    let mut seen = VertexSet::with_capacity(n);
    let mut queue = VecDeque::new();
    for comp in &members {
        let Some(&root) = comp.choose(&mut rng) else {
            continue;
        };
        seen.insert(root);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if seen.insert(v) {
                    side[v] = !side[u];
                    queue.push_back(v);
                }
            }
        }
    }
    // Each flip strictly increases the cut, so this terminates.
    loop {
        let mut changed = false;
        for v in 0..n {
            let same = g
                .neighbors(v)
                .iter()
                .filter(|&&w| side[w] == side[v])
                .count();
            if 2 * same > g.degree(v) {
                side[v] = !side[v];
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    side
}
