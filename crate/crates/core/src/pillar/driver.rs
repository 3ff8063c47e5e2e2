//! Finding a pillar in an arbitrary graph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::link::link_krakens;
use super::{verify_pillar, Pillar};
use crate::config::PipelineConfig;
use crate::embed::{find_q3_bruteforce, find_q3_rooted};
use crate::expander::{extract_expander, peel, ExtractOptions};
use crate::graph::{parity, Graph, GraphError, Subgraph};
use crate::kraken::{robust_kraken, Kraken};
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PillarStage {
    Extract,
    Krakens,
    Linking,
    Verify,
}

impl fmt::Display for PillarStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PillarStage::Extract => "expander extraction",
            PillarStage::Krakens => "kraken search",
            PillarStage::Linking => "linking",
            PillarStage::Verify => "verification",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PillarError {
    Precondition(String),
    Stage { stage: PillarStage, detail: String },
}

impl fmt::Display for PillarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PillarError::Precondition(m) => write!(f, "precondition failed: {m}"),
            PillarError::Stage { stage, detail } => {
                write!(f, "pillar search failed at {stage}: {detail}")
            }
        }
    }
}

impl core::error::Error for PillarError {}

fn stage(stage: PillarStage, detail: impl Into<String>) -> PillarError {
    PillarError::Stage {
        stage,
        detail: detail.into(),
    }
}

/// A pillar together with how it was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PillarRun {
    /// In the ids of the input graph.
    pub pillar: Pillar,
    pub via_q3: bool,
    /// Krakens built before two had equal cycle lengths.
    pub krakens: usize,
    /// Vertices of the input graph kept by extraction.
    pub expander_size: usize,
}

/// Extracts a bipartite expander, returns a cube if it has one, and
/// otherwise gathers disjoint robust krakens until two share a cycle
/// length and links them. The result is verified against `g`.
///
/// If that fails and `g` is not bipartite, the search is repeated on the
/// `d`-core of `g` without the bipartite step.
pub fn find_pillar(g: &Graph, config: &PipelineConfig) -> Result<PillarRun, PillarError> {
    if g.n() == 0 {
        return Err(PillarError::Precondition("graph is empty".into()));
    }
    let h = extract(g, config)?;
    let first = search(g, &h, config);
    if first.is_ok() || g.is_bipartite() {
        return first;
    }
    // The max-cut step can cut through the very structure being sought,
    // so a failed bipartite pass is followed by one over the d-core of
    // the input itself, where lengths carry no parity constraint.
    let core = peel(g, config.extract_degree);
    if core.is_empty() {
        return first;
    }
    search(g, &g.induced(&core), config)
}

fn search(g: &Graph, h: &Subgraph, config: &PipelineConfig) -> Result<PillarRun, PillarError> {
    let hg = &h.graph;
    let cube = if hg.n() <= config.q3_cap {
        find_q3_bruteforce(hg, config.q3_cap).ok().flatten()
    } else {
        let mut budget = config.q3_budget;
        find_q3_rooted(hg, 0..hg.n(), &VertexSet::new(), &mut budget)
    };
    if let Some(cert) = cube {
        let pillar = Pillar::from_q3(&cert).map(|v| h.host_of(v));
        return finish(g, pillar, true, 0, hg.n());
    }

    let mut krakens: Vec<Kraken> = Vec::new();
    let mut used = VertexSet::new();
    let mut last_link_error = None;
    for round in 0..config.max_krakens {
        let mut cfg = config.clone();
        cfg.seed = config.seed.wrapping_add(round as u64 * 1_000);
        let found = match robust_kraken(hg, &used, &cfg) {
            Ok(r) => r,
            Err(e) => {
                let detail = match &last_link_error {
                    Some(le) => format!("{e}; last linking error: {le}"),
                    None => format!("{e}"),
                };
                return Err(stage(
                    PillarStage::Krakens,
                    format!("after {} krakens: {detail}", krakens.len()),
                ));
            }
        };
        let high = found.state.high.clone();
        let kr = found.kraken;
        used.extend_from(&kr.vertex_set());
        for other in &krakens {
            if other.k() != kr.k() {
                continue;
            }
            match link_pair(hg, other, &kr, &high, config) {
                Ok(p) => {
                    let pillar = p.map(|v| h.host_of(v));
                    return finish(g, pillar, false, krakens.len() + 1, hg.n());
                }
                Err(e) => last_link_error = Some(e),
            }
        }
        krakens.push(kr);
    }
    let lengths: Vec<usize> = krakens.iter().map(Kraken::k).collect();
    Err(stage(
        match last_link_error {
            Some(_) => PillarStage::Linking,
            None => PillarStage::Krakens,
        },
        format!(
            "no linkable pair among {} krakens with cycle lengths {lengths:?}{}",
            krakens.len(),
            last_link_error
                .map(|e| format!("; last linking error: {e}"))
                .unwrap_or_default()
        ),
    ))
}

fn extract(g: &Graph, config: &PipelineConfig) -> Result<Subgraph, PillarError> {
    let d = config.extract_degree;
    let params = config.params.with_degree(d);
    let mut last = None;
    for attempt in 0..config.extract_attempts.max(1) {
        let mut opts = ExtractOptions::new(d, config.seed.wrapping_add(attempt as u64));
        opts.enforce_average_degree = config.enforce_degree_hypothesis;
        opts.trials = config.expansion_trials;
        match extract_expander(g, &params, &opts) {
            Ok(h) => return Ok(h),
            Err(e) => last = Some(e),
        }
    }
    Err(stage(
        PillarStage::Extract,
        format!("{}", last.expect("at least one attempt")),
    ))
}

/// Tries every alignment of `b`'s cycle against `a`'s and lengths from
/// `ell_min` upward with the right parity.
fn link_pair(
    g: &Graph,
    a: &Kraken,
    b: &Kraken,
    high: &VertexSet,
    config: &PipelineConfig,
) -> Result<Pillar, String> {
    let s = a.k();
    let mut last = String::from("no admissible length");
    for ell in config.ell_min.max(1)..=config.ell_max {
        for shift in 0..s {
            for reflect in [false, true] {
                let b2 = b.reindexed(shift, reflect);
                match parity(g, a.cycle.vertices()[0], b2.cycle.vertices()[0]) {
                    Ok(p) if ell % 2 != p as usize => continue,
                    Ok(_) | Err(GraphError::NotBipartite) => {}
                    Err(e) => return Err(format!("{e:?}")),
                }
                match link_krakens(g, a, &b2, ell, high, config) {
                    Ok(paths) => {
                        return Ok(Pillar {
                            s,
                            ell,
                            cycle1: a.cycle.clone(),
                            cycle2: b2.cycle.clone(),
                            paths,
                        })
                    }
                    Err(e) => last = format!("{e}"),
                }
            }
        }
    }
    Err(last)
}

fn finish(
    g: &Graph,
    pillar: Pillar,
    via_q3: bool,
    krakens: usize,
    expander_size: usize,
) -> Result<PillarRun, PillarError> {
    let report = verify_pillar(g, &pillar);
    if let Some(first) = report.failures.first() {
        return Err(stage(PillarStage::Verify, format!("{first}")));
    }
    Ok(PillarRun {
        pillar,
        via_q3,
        krakens,
        expander_size,
    })
}
