//! JSON certificates. Every record carries `"kind"` and `"version"`; the
//! remaining fields are plain vertex-id lists.

use pillar_core::embed::{Expansion, Q3Certificate};
use pillar_core::expander::{epsilon, CheckMode, CheckedMode, ExpanderParams, ExpansionReport};
use pillar_core::graph::{Cycle, Path};
use pillar_core::kraken::{verify_kraken, Kraken};
use pillar_core::pillar::{verify_pillar, Pillar};
use pillar_core::{Graph, VertexSet};
use serde::{Deserialize, Serialize};

use crate::error::ToolError;

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Pillar(PillarCert),
    Kraken(KrakenCert),
    Q3(Q3Cert),
    Expansion(ExpansionCert),
    ExpansionReport(ExpansionReportCert),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PillarCert {
    pub version: u32,
    pub s: usize,
    pub ell: usize,
    pub cycle1: Vec<usize>,
    pub cycle2: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KrakenCert {
    pub version: u32,
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub cycle: Vec<usize>,
    pub ends: Vec<usize>,
    /// Each leg in BFS order from its end.
    pub legs: Vec<Vec<usize>>,
    pub paths: Vec<Vec<usize>>,
}

/// `vertices[b]` is the image of the cube label with bits `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Q3Cert {
    pub version: u32,
    pub vertices: [usize; 8],
}

/// A `(D, m)`-expansion with `D = members.len()` and `m = radius`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpansionCert {
    pub version: u32,
    pub center: usize,
    pub members: Vec<usize>,
    pub radius: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpansionReportCert {
    pub version: u32,
    /// `"exact"` or `"sampled"`.
    pub mode: String,
    pub eps1: f64,
    pub eps2: f64,
    pub d: usize,
    /// Needed to replay a clean sampled check.
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub samples: usize,
    pub witness: Option<WitnessCert>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessCert {
    pub set: Vec<usize>,
    pub removed_edges: Vec<(usize, usize)>,
    pub neighborhood: usize,
    pub required: f64,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Pillar(_) => "pillar",
            Certificate::Kraken(_) => "kraken",
            Certificate::Q3(_) => "q3",
            Certificate::Expansion(_) => "expansion",
            Certificate::ExpansionReport(_) => "expansion-report",
        }
    }

    fn version(&self) -> u32 {
        match self {
            Certificate::Pillar(c) => c.version,
            Certificate::Kraken(c) => c.version,
            Certificate::Q3(c) => c.version,
            Certificate::Expansion(c) => c.version,
            Certificate::ExpansionReport(c) => c.version,
        }
    }

    pub fn from_json(text: &str) -> Result<Certificate, ToolError> {
        let cert: Certificate = serde_json::from_str(text)
            .map_err(|e| ToolError::Malformed(format!("certificate: {e}")))?;
        if cert.version() != VERSION {
            return Err(ToolError::Malformed(format!(
                "certificate version {} is not supported (expected {VERSION})",
                cert.version()
            )));
        }
        Ok(cert)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates always serialize");
        s.push('\n');
        s
    }

    /// Clause-by-clause failures; empty means valid.
    pub fn verify(&self, g: &Graph) -> Vec<String> {
        match self {
            Certificate::Pillar(c) => verify_pillar(g, &c.to_pillar())
                .failures
                .iter()
                .map(|f| f.to_string())
                .collect(),
            Certificate::Kraken(c) => {
                let kr = c.to_kraken();
                let mut out: Vec<String> = Vec::new();
                if c.k != c.cycle.len() {
                    out.push(format!(
                        "shape: k = {} but the cycle has {} vertices",
                        c.k,
                        c.cycle.len()
                    ));
                }
                if c.legs.iter().any(|l| l.is_empty()) {
                    out.push("shape: empty leg".into());
                    return out;
                }
                out.extend(verify_kraken(g, &kr).failures.iter().map(|f| f.to_string()));
                out
            }
            Certificate::Q3(c) => match (Q3Certificate {
                vertices: c.vertices,
            })
            .validate(g)
            {
                Ok(()) => Vec::new(),
                Err(d) => vec![format!("cube: {d:?}")],
            },
            Certificate::Expansion(c) => {
                let e = Expansion::from_bfs_order(c.center, c.members.clone(), c.radius);
                match e.validate(g) {
                    Ok(()) => Vec::new(),
                    Err(d) => vec![format!("expansion: {d:?}")],
                }
            }
            Certificate::ExpansionReport(c) => c.verify(g),
        }
    }
}

impl PillarCert {
    pub fn from_pillar(p: &Pillar) -> Self {
        PillarCert {
            version: VERSION,
            s: p.s,
            ell: p.ell,
            cycle1: p.cycle1.vertices().to_vec(),
            cycle2: p.cycle2.vertices().to_vec(),
            paths: p.paths.iter().map(|q| q.vertices().to_vec()).collect(),
        }
    }

    pub fn to_pillar(&self) -> Pillar {
        Pillar {
            s: self.s,
            ell: self.ell,
            cycle1: Cycle::new(self.cycle1.clone()),
            cycle2: Cycle::new(self.cycle2.clone()),
            paths: self.paths.iter().map(|q| Path::new(q.clone())).collect(),
        }
    }
}

impl KrakenCert {
    pub fn from_kraken(kr: &Kraken) -> Self {
        KrakenCert {
            version: VERSION,
            k: kr.k(),
            s: kr.s,
            t: kr.t,
            cycle: kr.cycle.vertices().to_vec(),
            ends: kr.ends.clone(),
            legs: kr.legs.iter().map(|l| l.members().to_vec()).collect(),
            paths: kr.paths.iter().map(|q| q.vertices().to_vec()).collect(),
        }
    }

    /// Legs are centred at their first member and get radius `s`.
    pub fn to_kraken(&self) -> Kraken {
        Kraken {
            s: self.s,
            t: self.t,
            cycle: Cycle::new(self.cycle.clone()),
            ends: self.ends.clone(),
            legs: self
                .legs
                .iter()
                .map(|l| {
                    Expansion::from_bfs_order(
                        l.first().copied().unwrap_or(usize::MAX),
                        l.clone(),
                        self.s,
                    )
                })
                .collect(),
            paths: self.paths.iter().map(|q| Path::new(q.clone())).collect(),
        }
    }
}

impl Q3Cert {
    pub fn from_q3(c: &Q3Certificate) -> Self {
        Q3Cert {
            version: VERSION,
            vertices: c.vertices,
        }
    }
}

impl ExpansionCert {
    pub fn from_expansion(e: &Expansion) -> Self {
        ExpansionCert {
            version: VERSION,
            center: e.center(),
            members: e.members().to_vec(),
            radius: e.radius(),
        }
    }
}

impl ExpansionReportCert {
    pub fn from_report(r: &ExpansionReport, mode: CheckMode) -> Self {
        let (seed, trials) = match mode {
            CheckMode::Exact => (None, None),
            CheckMode::Sampled { seed, trials } => (Some(seed), Some(trials)),
        };
        ExpansionReportCert {
            version: VERSION,
            mode: match r.mode {
                CheckedMode::Exact => "exact".into(),
                CheckedMode::Sampled => "sampled".into(),
            },
            eps1: r.params.eps1,
            eps2: r.params.eps2,
            d: r.params.d,
            seed,
            trials,
            samples: r.samples,
            witness: r.witness.as_ref().map(|w| WitnessCert {
                set: w.set.iter().collect(),
                removed_edges: w.removed_edges.clone(),
                neighborhood: w.neighborhood,
                required: w.required,
            }),
        }
    }

    /// A witness is checked directly. A clean report is replayed with the
    /// recorded mode and must come out clean again.
    fn verify(&self, g: &Graph) -> Vec<String> {
        let params = match ExpanderParams::new(self.eps1, self.eps2, self.d) {
            Ok(p) => p,
            Err(e) => return vec![format!("params: {e}")],
        };
        let Some(w) = &self.witness else {
            let mode = match (self.mode.as_str(), self.seed, self.trials) {
                ("exact", _, _) => CheckMode::Exact,
                ("sampled", Some(seed), Some(trials)) => CheckMode::Sampled { seed, trials },
                _ => return vec!["mode: clean sampled report needs seed and trials".into()],
            };
            return match pillar_core::expander::check_expansion(g, &params, mode) {
                Ok(r) if r.is_clean() => Vec::new(),
                Ok(_) => vec!["replay: the check finds a violating set".into()],
                Err(e) => vec![format!("replay: {e}")],
            };
        };
        let mut out = Vec::new();
        let set: VertexSet = w.set.iter().copied().collect();
        if let Some(&v) = w.set.iter().find(|&&v| v >= g.n()) {
            return vec![format!("witness: vertex {v} out of range")];
        }
        if set.len() != w.set.len() {
            out.push("witness: repeated vertex".into());
        }
        let x = set.len();
        let (lo, hi) = pillar_core::expander::admissible_sizes(g.n(), &params);
        if x < lo || x > hi {
            out.push(format!("witness: |X| = {x} outside {lo}..={hi}"));
        }
        for &(a, b) in &w.removed_edges {
            if a >= g.n() || b >= g.n() || !g.has_edge(a, b) {
                out.push(format!("witness: ({a}, {b}) is not an edge"));
            } else if set.contains(a) == set.contains(b) {
                out.push(format!("witness: edge ({a}, {b}) does not leave X"));
            }
        }
        let budget = pillar_core::expander::deletion_budget(g, x, &params);
        if w.removed_edges.len() > budget {
            out.push(format!(
                "witness: {} deleted edges exceed the budget {budget}",
                w.removed_edges.len()
            ));
        }
        let removed = |a: usize, b: usize| {
            w.removed_edges
                .iter()
                .any(|&(p, q)| (p, q) == (a, b) || (p, q) == (b, a))
        };
        let mut nbrs = VertexSet::new();
        for v in set.iter() {
            for &u in g.neighbors(v) {
                if !set.contains(u) && !removed(v, u) {
                    nbrs.insert(u);
                }
            }
        }
        let required = epsilon(x as f64, &params) * x as f64;
        if nbrs.len() as f64 >= required {
            out.push(format!(
                "witness: |N(X)| = {} is not below ε(|X|)·|X| = {required:.4}",
                nbrs.len()
            ));
        }
        if nbrs.len() != w.neighborhood {
            out.push(format!(
                "witness: recorded |N(X)| = {} but measured {}",
                w.neighborhood,
                nbrs.len()
            ));
        }
        out
    }
}
