//! `pillar` subcommands. Exit status: 0 success or valid, 1 not found or
//! invalid, 2 bad input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pillar_core::embed::{find_q3_bruteforce, find_q3_rooted};
use pillar_core::graph::{generate, parse_edge_list, GraphKind};
use pillar_core::kraken::robust_kraken;
use pillar_core::pillar::find_pillar;
use pillar_core::{Graph, VertexSet};

use crate::bench;
use crate::cert::{Certificate, KrakenCert, PillarCert, Q3Cert};
use crate::error::ToolError;
use crate::runconfig::RunConfig;

#[derive(Debug, Parser)]
#[command(
    name = "pillar",
    version,
    about = "Search for and verify pillars, krakens and cubes in graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Search for a structure and write its certificate.
    Find(FindArgs),
    /// Check a certificate against a graph.
    Verify(VerifyArgs),
    /// Time the core primitives and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    RandomRegular,
    RandomBipartite,
    Hypercube,
    Prism,
    SubdividedPrism,
    Path,
    Cycle,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub kind: GenKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// First side of a random bipartite graph.
    #[arg(long)]
    pub a: Option<usize>,
    /// Second side of a random bipartite graph.
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Required for the random kinds.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FindTarget {
    Q3,
    Kraken,
    Pillar,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    pub target: FindTarget,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides the config file's seed (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Pillar,
    Kraken,
    Q3,
    Expansion,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub kind: VerifyKind,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub cert: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Repetitions of the ball and connection measurements.
    #[arg(long, default_value_t = 20)]
    pub runs: usize,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

pub fn load_graph(path: &Path) -> Result<Graph, ToolError> {
    let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    parse_edge_list(&text).map_err(|source| ToolError::Graph {
        path: path.display().to_string(),
        source,
    })
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, ToolError> {
    path.map_or(Ok(RunConfig::default()), RunConfig::load)
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), ToolError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| ToolError::io(p, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| ToolError::io(Path::new("<stdout>"), e)),
    }
}

fn need<T>(v: Option<T>, flag: &str, kind: GenKind) -> Result<T, ToolError> {
    v.ok_or_else(|| ToolError::Malformed(format!("{kind:?} needs --{flag}")))
}

fn cmd_generate(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<u8, ToolError> {
    let k = args.kind;
    let kind = match k {
        GenKind::RandomRegular => GraphKind::RandomRegular {
            n: need(args.n, "n", k)?,
            d: need(args.d, "d", k)?,
            seed: need(args.seed, "seed", k)?,
        },
        GenKind::RandomBipartite => GraphKind::RandomBipartite {
            a: need(args.a, "a", k)?,
            b: need(args.b, "b", k)?,
            p: need(args.p, "p", k)?,
            seed: need(args.seed, "seed", k)?,
        },
        GenKind::Hypercube => GraphKind::Hypercube {
            dim: need(args.dim, "dim", k)?,
        },
        GenKind::Prism => GraphKind::Prism {
            s: need(args.s, "s", k)?,
        },
        GenKind::SubdividedPrism => GraphKind::SubdividedPrism {
            s: need(args.s, "s", k)?,
            ell: need(args.ell, "ell", k)?,
        },
        GenKind::Path => GraphKind::Path {
            n: need(args.n, "n", k)?,
        },
        GenKind::Cycle => GraphKind::Cycle {
            n: need(args.n, "n", k)?,
        },
    };
    let g = generate(kind).map_err(|e| ToolError::Malformed(e.to_string()))?;
    write_output(args.out.as_deref(), &g.to_edge_list(), stdout)?;
    Ok(0)
}

fn not_found(stderr: &mut dyn Write, g: &Graph, what: &str, detail: &str) -> u8 {
    let _ = writeln!(stderr, "{what} not found");
    let _ = writeln!(stderr, "graph: n = {}, m = {}", g.n(), g.edge_count());
    let _ = writeln!(stderr, "{detail}");
    1
}

fn cmd_find(
    args: &FindArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8, ToolError> {
    let g = load_graph(&args.graph)?;
    let rc = load_config(args.config.as_deref())?;
    let config = rc.resolve(g.n(), args.seed)?;
    let cert = match args.target {
        FindTarget::Q3 => {
            let found = if g.n() <= config.q3_cap {
                find_q3_bruteforce(&g, config.q3_cap)
                    .map_err(|e| ToolError::Malformed(e.to_string()))?
            } else {
                let mut budget = config.q3_budget;
                find_q3_rooted(&g, 0..g.n(), &VertexSet::new(), &mut budget)
            };
            match found {
                Some(c) => Certificate::Q3(Q3Cert::from_q3(&c)),
                None => {
                    let why = if g.n() <= config.q3_cap {
                        "exhaustive search: the graph is Q3-free"
                    } else {
                        "budgeted search found no cube"
                    };
                    return Ok(not_found(stderr, &g, "Q3", why));
                }
            }
        }
        FindTarget::Kraken => match robust_kraken(&g, &VertexSet::new(), &config) {
            Ok(r) => {
                let _ = writeln!(stderr, "{}", r.report);
                Certificate::Kraken(KrakenCert::from_kraken(&r.kraken))
            }
            Err(e) => return Ok(not_found(stderr, &g, "kraken", &e.to_string())),
        },
        FindTarget::Pillar => match find_pillar(&g, &config) {
            Ok(run) => {
                let _ = writeln!(
                    stderr,
                    "s = {}, ell = {}, via cube: {}, krakens: {}, expander size: {}",
                    run.pillar.s, run.pillar.ell, run.via_q3, run.krakens, run.expander_size
                );
                Certificate::Pillar(PillarCert::from_pillar(&run.pillar))
            }
            Err(e) => return Ok(not_found(stderr, &g, "pillar", &e.to_string())),
        },
    };
    // Every emitted certificate must pass its own verifier.
    let failures = cert.verify(&g);
    if let Some(f) = failures.first() {
        let _ = writeln!(
            stderr,
            "internal error: emitted certificate fails verification: {f}"
        );
        return Ok(1);
    }
    write_output(args.out.as_deref(), &cert.to_json(), stdout)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<u8, ToolError> {
    let g = load_graph(&args.graph)?;
    let text = std::fs::read_to_string(&args.cert).map_err(|e| ToolError::io(&args.cert, e))?;
    let cert = Certificate::from_json(&text)?;
    let matches = matches!(
        (args.kind, &cert),
        (VerifyKind::Pillar, Certificate::Pillar(_))
            | (VerifyKind::Kraken, Certificate::Kraken(_))
            | (VerifyKind::Q3, Certificate::Q3(_))
            | (
                VerifyKind::Expansion,
                Certificate::Expansion(_) | Certificate::ExpansionReport(_)
            )
    );
    if !matches {
        return Err(ToolError::Malformed(format!(
            "asked to verify {:?} but the certificate is of kind {}",
            args.kind,
            cert.kind()
        )));
    }
    let failures = cert.verify(&g);
    if failures.is_empty() {
        let _ = writeln!(stdout, "valid {}", cert.kind());
        return Ok(0);
    }
    let _ = writeln!(
        stdout,
        "invalid {}: {} failing clause(s)",
        cert.kind(),
        failures.len()
    );
    for f in &failures {
        let _ = writeln!(stdout, "  {f}");
    }
    Ok(1)
}

fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write) -> Result<u8, ToolError> {
    let g = load_graph(&args.graph)?;
    let rc = load_config(args.config.as_deref())?;
    let config = rc.resolve(g.n(), args.seed)?;
    let rows = bench::run(
        &g,
        &config.params,
        config.seed,
        args.runs,
        args.trials,
        args.workers,
    );
    let mut out = String::from(bench::HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    write_output(None, &out, stdout)?;
    Ok(0)
}

/// Runs one subcommand and returns its exit status.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a, stdout),
        Command::Find(a) => cmd_find(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
