//! Acceptance criteria, one line each. Exits nonzero if any fails.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use pillar_core::config::PipelineConfig;
use pillar_core::embed::{
    connect_short, find_q3_bipartite, find_q3_bruteforce, find_q3_rooted, grow_expansion,
    grow_past_thin, growth_bound, short_path_bound, trim_expansion,
};
use pillar_core::embed::{EmbedError, Expansion};
use pillar_core::expander::{epsilon, ExpanderParams};
use pillar_core::graph::{add_noise, generate, prism_layout, GraphKind};
use pillar_core::kraken::{robust_kraken, verify_kraken, Kraken};
use pillar_core::pillar::{
    connect_fixed_length, find_pillar, verify_pillar, FixedLengthOptions, Pillar, PillarClause,
};
use pillar_core::{Cycle, Graph, Path, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(limit: Duration, t: Instant, o: Outcome) -> Outcome {
    let took = t.elapsed();
    if took > limit {
        return outcome(
            false,
            format!("{}; took {took:.2?}, limit {limit:?}", o.detail),
        );
    }
    o
}

// 1 ------------------------------------------------------------------------

fn natural(s: usize, ell: usize) -> (Graph, Pillar) {
    let g = generate(GraphKind::SubdividedPrism { s, ell }).unwrap();
    let lay = prism_layout(s, ell).unwrap();
    let p = Pillar {
        s,
        ell,
        cycle1: Cycle::new(lay.cycle1),
        cycle2: Cycle::new(lay.cycle2),
        paths: lay.paths.into_iter().map(Path::new).collect(),
    };
    (g, p)
}

/// One field changed, and the clause that must be reported for it.
fn mutate(p: &Pillar, rng: &mut ChaCha8Rng) -> (Pillar, &'static str, fn(&PillarClause) -> bool) {
    let s = p.s;
    let mut q = p.clone();
    match rng.gen_range(0..3) {
        0 => {
            // Id swap on the first cycle: paths no longer start in place.
            let i = rng.gen_range(0..s);
            let j = (i + rng.gen_range(1..s)) % s;
            let mut c = p.cycle1.vertices().to_vec();
            c.swap(i, j);
            q.cycle1 = Cycle::new(c);
            (q, "id swap", |c| matches!(c, PillarClause::Start { .. }))
        }
        1 => {
            let i = rng.gen_range(0..s);
            let mut v = p.paths[i].vertices().to_vec();
            v.pop();
            q.paths[i] = Path::new(v);
            (q, "path truncation", |c| {
                matches!(c, PillarClause::EqualLength { .. })
            })
        }
        _ => {
            // Two neighbouring ends on the second cycle trade places.
            let i = rng.gen_range(0..s);
            let mut c = p.cycle2.vertices().to_vec();
            c.swap(i, (i + 1) % s);
            q.cycle2 = Cycle::new(c);
            (q, "endpoint reorder", |c| {
                matches!(c, PillarClause::Matching)
            })
        }
    }
}

fn certificate_soundness() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for s in [4, 6, 8] {
        for ell in 1..=5 {
            let (g, p) = natural(s, ell);
            let report = verify_pillar(&g, &p);
            if !report.is_valid() {
                return outcome(
                    false,
                    format!("prism({s},{ell}) rejected: {:?}", report.failures),
                );
            }
            for _ in 0..100 {
                let (q, name, expected) = mutate(&p, &mut rng);
                let failures = verify_pillar(&g, &q).failures;
                if !failures.iter().any(expected) {
                    return outcome(false, format!("prism({s},{ell}) {name}: got {failures:?}"));
                }
                checked += 1;
            }
        }
    }
    within(
        Duration::from_secs(5),
        t,
        outcome(
            true,
            format!("15 prisms accepted, {checked} mutations rejected with the right clause"),
        ),
    )
}

// 2 ------------------------------------------------------------------------

fn choose3(n: usize) -> usize {
    n * (n - 1) * (n - 2) / 6
}

/// Sides `W = 0..w`, `U = w..w+u`; each `u` gets a random neighbour set of
/// size `deg_lo..=w` in `W`.
fn bipartite_instance(
    w: usize,
    u: usize,
    deg_lo: usize,
    rng: &mut ChaCha8Rng,
) -> (Graph, VertexSet, VertexSet) {
    let mut edges = Vec::new();
    let ws: Vec<usize> = (0..w).collect();
    for x in w..w + u {
        let deg = rng.gen_range(deg_lo..=w);
        for &y in ws.choose_multiple(rng, deg) {
            edges.push((x, y));
        }
    }
    let g = Graph::from_edges(w + u, edges).unwrap();
    (g, (w..w + u).collect(), (0..w).collect())
}

fn q3_oracle() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let default_budget =
        PipelineConfig::relaxed(ExpanderParams::new(0.1, 0.2, 4).unwrap()).q3_budget;
    for i in 0..200 {
        let w = 4 + i % 4;
        let (g, us, ws) = bipartite_instance(w, choose3(w) + 1, 4, &mut rng);
        let cert = match find_q3_bipartite(&g, &us, &ws, 4) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("instance {i}: colouring search failed: {e}")),
        };
        if cert.validate(&g).is_err() {
            return outcome(false, format!("instance {i}: invalid certificate"));
        }
        match find_q3_bruteforce(&g, g.n()) {
            Ok(Some(_)) => {}
            other => {
                return outcome(
                    false,
                    format!("instance {i}: brute force disagrees: {other:?}"),
                )
            }
        }
    }
    let (mut present, mut absent) = (0, 0);
    for i in 0..200 {
        let w = 4 + i % 4;
        let u = rng.gen_range(1..=choose3(w));
        let (g, us, ws) = bipartite_instance(w, u, 3.min(w), &mut rng);
        match find_q3_bipartite(&g, &us, &ws, 4) {
            Err(EmbedError::Precondition(_)) => {}
            other => {
                return outcome(
                    false,
                    format!("instance {i}: expected a precondition error, got {other:?}"),
                )
            }
        }
        let truth = find_q3_bruteforce(&g, g.n()).unwrap();
        let mut budget = default_budget;
        let found = find_q3_rooted(&g, 0..g.n(), &VertexSet::new(), &mut budget);
        if found.is_some() != truth.is_some() {
            return outcome(
                false,
                format!("instance {i}: budgeted search disagrees with the brute force"),
            );
        }
        if let Some(c) = truth {
            if c.validate(&g).is_err() {
                return outcome(
                    false,
                    format!("instance {i}: brute force certificate invalid"),
                );
            }
            present += 1;
        } else {
            absent += 1;
        }
    }
    within(
        Duration::from_secs(30),
        t,
        outcome(
            true,
            format!("200/200 colouring certificates confirmed; 200 referee checks ({present} with a cube, {absent} without)"),
        ),
    )
}

// 3 ------------------------------------------------------------------------

fn epsilon_analytics() -> Outcome {
    let triples = [(0.1, 0.2, 10), (0.5, 0.05, 40), (0.01, 0.2, 1000)];
    let tol = 1e-12;
    for (e1, e2, d) in triples {
        let p = ExpanderParams::new(e1, e2, d).unwrap();
        let k = p.k();
        // 1000 points from k/100 to 10^9·k.
        let grid: Vec<f64> = (0..1000)
            .map(|i| k / 100.0 * 10f64.powf(11.0 * i as f64 / 999.0))
            .collect();
        let mut prev: Option<(f64, f64)> = None;
        for &x in &grid {
            let e = epsilon(x, &p);
            if x < k / 5.0 && e != 0.0 {
                return outcome(
                    false,
                    format!("ε({x}) = {e} below k/5 for {:?}", (e1, e2, d)),
                );
            }
            if x >= k / 2.0 {
                if let Some((pe, pxe)) = prev {
                    if e > pe + tol {
                        return outcome(
                            false,
                            format!("ε increases at x = {x} for {:?}", (e1, e2, d)),
                        );
                    }
                    if x * e < pxe - tol {
                        return outcome(
                            false,
                            format!("x·ε(x) decreases at x = {x} for {:?}", (e1, e2, d)),
                        );
                    }
                }
                prev = Some((e, x * e));
            }
        }
    }
    outcome(true, "3 parameter triples on a 1000-point geometric grid")
}

// 4 ------------------------------------------------------------------------

fn path_lengths(g: &Graph, a: usize, b: usize) -> Vec<bool> {
    fn go(g: &Graph, v: usize, b: usize, depth: usize, seen: &mut [bool], out: &mut [bool]) {
        if v == b {
            out[depth] = true;
            return;
        }
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                go(g, w, b, depth + 1, seen, out);
                seen[w] = false;
            }
        }
    }
    let mut out = vec![false; g.n().max(12)];
    let mut seen = vec![false; g.n()];
    seen[a] = true;
    go(g, a, b, 0, &mut seen, &mut out);
    out
}

fn connector_corpus() -> Vec<Graph> {
    let mut graphs = vec![
        generate(GraphKind::Hypercube { dim: 3 }).unwrap(),
        generate(GraphKind::Prism { s: 5 }).unwrap(),
        generate(GraphKind::Prism { s: 6 }).unwrap(),
        generate(GraphKind::SubdividedPrism { s: 3, ell: 2 }).unwrap(),
        generate(GraphKind::SubdividedPrism { s: 4, ell: 2 }).unwrap(),
        generate(GraphKind::Path { n: 12 }).unwrap(),
        generate(GraphKind::Cycle { n: 11 }).unwrap(),
        generate(GraphKind::Cycle { n: 12 }).unwrap(),
        Graph::from_edges(6, (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v)))).unwrap(),
        Graph::from_edges(8, (0..4).flat_map(|u| (4..8).map(move |v| (u, v)))).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    while graphs.len() < 300 {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.15..0.6);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if g.component_count() == 1 {
            graphs.push(g);
        }
    }
    graphs
}

fn connector_oracle() -> Outcome {
    let t = Instant::now();
    let opts = FixedLengthOptions::default();
    let none = VertexSet::new();
    let corpus = connector_corpus();
    let mut queries = 0;
    for (gi, g) in corpus.iter().enumerate() {
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                let truth = path_lengths(g, a, b);
                let parity = g.side(a).zip(g.side(b)).map(|(x, y)| usize::from(x != y));
                for ell in 1..=11 {
                    if parity.is_some_and(|p| ell % 2 != p) {
                        continue;
                    }
                    queries += 1;
                    let got = connect_fixed_length(
                        g,
                        &Expansion::singleton(a),
                        &Expansion::singleton(b),
                        ell,
                        &none,
                        &opts,
                    );
                    let ok = match &got {
                        Ok(p) => {
                            truth[ell]
                                && p.len() == ell
                                && p.validate(g).is_ok()
                                && p.start() == a
                                && p.end() == b
                        }
                        Err(_) => !truth[ell],
                    };
                    if !ok {
                        return outcome(false, format!("graph {gi} (n = {}), {a}-{b}, ℓ = {ell}: got {got:?}, enumeration says {}", g.n(), truth[ell]));
                    }
                }
            }
        }
    }
    within(
        Duration::from_secs(60),
        t,
        outcome(
            true,
            format!(
                "{} graphs, {queries} queries, zero disagreements",
                corpus.len()
            ),
        ),
    )
}

// 5 ------------------------------------------------------------------------

fn trimming() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs: Vec<Graph> = (0..10)
        .map(|s| {
            generate(GraphKind::RandomRegular {
                n: 2000,
                d: 3 + s % 4,
                seed: s as u64,
            })
            .unwrap()
        })
        .collect();
    for i in 0..500 {
        let g = &graphs[i % graphs.len()];
        let c = rng.gen_range(0..g.n());
        let e = grow_expansion(g, c, |_| true, rng.gen_range(1..400), rng.gen_range(1..12));
        let target = rng.gen_range(1..=e.size());
        let tr = match trim_expansion(&e, target) {
            Ok(t) => t,
            Err(err) => return outcome(false, format!("pair {i}: {err}")),
        };
        if tr.size() != target
            || tr.center() != c
            || tr.radius() > e.radius()
            || tr.validate(g).is_err()
        {
            return outcome(
                false,
                format!(
                    "pair {i}: size {} of {target}, radius {} of {}",
                    tr.size(),
                    tr.radius(),
                    e.radius()
                ),
            );
        }
    }
    outcome(true, "500/500 trimmed expansions exact")
}

// 6 ------------------------------------------------------------------------

fn robust_connection() -> Outcome {
    let params = ExpanderParams::new(0.1, 0.2, 8).unwrap();
    let (mut longest, mut total) = (0, 0);
    for seed in 0..20u64 {
        let g = generate(GraphKind::RandomRegular {
            n: 10_000,
            d: 8,
            seed,
        })
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(600 + seed);
        let picked = rand::seq::index::sample(&mut rng, g.n(), 203).into_vec();
        let a: VertexSet = picked[..100].iter().copied().collect();
        let b: VertexSet = picked[100..200].iter().copied().collect();
        let w: VertexSet = picked[200..].iter().copied().collect();
        match connect_short(&g, &a, &b, &w, &params, 100, true) {
            Ok(p) => {
                let inside = p.vertices().iter().all(|&v| !w.contains(v));
                if !inside
                    || !a.contains(p.start())
                    || !b.contains(p.end())
                    || p.validate(&g).is_err()
                {
                    return outcome(false, format!("seed {seed}: malformed path"));
                }
                longest = longest.max(p.len());
                total += p.len();
            }
            Err(e) => return outcome(false, format!("seed {seed}: {e}")),
        }
    }
    outcome(
        true,
        format!(
            "20/20 connected, mean length {:.2}, longest {longest} ≤ {:.0}",
            total as f64 / 20.0,
            short_path_bound(10_000, &params)
        ),
    )
}

// 7 ------------------------------------------------------------------------

fn ball_growth() -> Outcome {
    let params = ExpanderParams::new(0.1, 0.2, 10).unwrap();
    let n = 100_000;
    let r = (n as f64).ln().floor() as usize;
    for seed in 0..20u64 {
        let g = generate(GraphKind::RandomRegular { n, d: 10, seed }).unwrap();
        let v = ChaCha8Rng::seed_from_u64(700 + seed).gen_range(0..n);
        let none = VertexSet::new();
        let grown = match grow_past_thin(
            &g,
            &VertexSet::singleton(v),
            &none,
            &none,
            r,
            &params,
            1.0,
            1,
        ) {
            Ok(x) => x,
            Err(e) => return outcome(false, format!("seed {seed}: {e}")),
        };
        for i in 1..=r {
            if (grown.sizes[i] as f64) < growth_bound(i) {
                return outcome(
                    false,
                    format!(
                        "seed {seed}: |B^{i}| = {} < {:.2}",
                        grown.sizes[i],
                        growth_bound(i)
                    ),
                );
            }
        }
    }
    outcome(true, format!("20/20 seeds meet exp(r^(1/4)) for r ≤ {r}"))
}

// 8 ------------------------------------------------------------------------

fn cube_fast_path() -> Outcome {
    let t = Instant::now();
    let g = generate(GraphKind::Hypercube { dim: 3 }).unwrap();
    let config = PipelineConfig::relaxed(ExpanderParams::new(0.1, 0.2, 3).unwrap());
    let (a, b) = match (find_pillar(&g, &config), find_pillar(&g, &config)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, e.to_string()),
    };
    let ok = a == b
        && a.via_q3
        && (a.pillar.s, a.pillar.ell) == (4, 1)
        && verify_pillar(&g, &a.pillar).is_valid();
    within(
        Duration::from_secs(1),
        t,
        outcome(ok, "s = 4, ℓ = 1, identical on rerun"),
    )
}

// 9 ------------------------------------------------------------------------

fn planted_recovery() -> Outcome {
    let t = Instant::now();
    let base = generate(GraphKind::SubdividedPrism { s: 8, ell: 5 }).unwrap();
    let mut config = PipelineConfig::relaxed(ExpanderParams::new(0.1, 0.2, 4).unwrap());
    config.separation = 1;
    config.kraken_spacing = 1;
    config.leg_size = 1;
    config.anchor_size = 2;
    let mut found = 0;
    let mut failures = Vec::new();
    for seed in 0..10u64 {
        let g = add_noise(&base, 40, 2, seed).unwrap();
        match find_pillar(&g, &config) {
            Ok(run) if verify_pillar(&g, &run.pillar).is_valid() => found += 1,
            Ok(_) => failures.push(format!("seed {seed}: certificate rejected")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let detail = if failures.is_empty() {
        format!("{found}/10 noisy instances yield a verified pillar")
    } else {
        format!("{found}/10; {}", failures.join("; "))
    };
    within(Duration::from_secs(60), t, outcome(found == 10, detail))
}

// 10 -----------------------------------------------------------------------

/// Pairwise distances between low-degree legs in `G - L`, by plain BFS.
fn legs_separated(g: &Graph, kr: &Kraken, high: &VertexSet, sep: usize) -> Result<(), String> {
    let low: Vec<usize> = (0..kr.k())
        .filter(|&j| !high.contains(kr.ends[j]))
        .collect();
    for (x, &i) in low.iter().enumerate() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut queue = std::collections::VecDeque::new();
        for &v in kr.legs[i].members() {
            if !high.contains(v) {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            if dist[u] + 1 >= sep {
                continue;
            }
            for &w in g.neighbors(u) {
                if !high.contains(w) && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for &j in &low[x + 1..] {
            if let Some(&v) = kr.legs[j]
                .members()
                .iter()
                .find(|&&v| dist[v] != usize::MAX)
            {
                return Err(format!("legs {i} and {j} at distance {} < {sep}", dist[v]));
            }
        }
    }
    Ok(())
}

fn pipeline_integration() -> Outcome {
    let mut passed = 0;
    let mut notes = Vec::new();
    let mut slowest = Duration::ZERO;
    for seed in 0..10u64 {
        let t = Instant::now();
        let g = generate(GraphKind::RandomRegular {
            n: 100_000,
            d: 12,
            seed,
        })
        .unwrap();
        let mut config = PipelineConfig::relaxed(ExpanderParams::new(0.1, 0.2, 12).unwrap());
        config.seed = seed;
        let result = robust_kraken(&g, &VertexSet::new(), &config);
        let took = t.elapsed();
        slowest = slowest.max(took);
        match result {
            Ok(r) => {
                let report = verify_kraken(&g, &r.kraken);
                let sep = legs_separated(&g, &r.kraken, &r.state.high, config.separation);
                if !report.is_valid() {
                    notes.push(format!("seed {seed}: invalid kraken {:?}", report.failures));
                } else if let Err(e) = sep {
                    notes.push(format!("seed {seed}: {e}"));
                } else if took > Duration::from_secs(120) {
                    notes.push(format!("seed {seed}: took {took:.2?}"));
                } else {
                    passed += 1;
                }
            }
            Err(e) => notes.push(format!("seed {seed}: {e}")),
        }
    }
    let mut detail = format!("{passed}/10 verified and separated, slowest seed {slowest:.2?}");
    if !notes.is_empty() {
        detail.push_str("; ");
        detail.push_str(&notes.join("; "));
    }
    outcome(passed >= 8, detail)
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("certificate soundness", certificate_soundness),
        ("Q3 oracle equivalence", q3_oracle),
        ("epsilon analytics", epsilon_analytics),
        ("fixed-length connector oracle", connector_oracle),
        ("trimming exactness", trimming),
        ("robust connection on expanders", robust_connection),
        ("ball growth", ball_growth),
        ("cube fast path", cube_fast_path),
        ("planted recovery", planted_recovery),
        ("pipeline integration", pipeline_integration),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{verdict}] {:>2} {name}: {} ({:.2?})",
            i + 1,
            o.detail,
            t.elapsed()
        );
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
