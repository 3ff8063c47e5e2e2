//! Every size threshold of the kraken and pillar pipeline in one record.
//!
//! `PipelineConfig::paper` derives each quantity from `n` by its asymptotic
//! formula. Those values never fire on graphs that fit in memory (leg sizes
//! of `(ln n)^b` with `b ≥ 10` exceed `n`), so `PipelineConfig::relaxed`
//! supplies explicit small integers that keep the pipeline's logic intact.

use crate::expander::ExpanderParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigMode {
    Paper,
    Relaxed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub mode: ConfigMode,
    pub params: ExpanderParams,
    /// Exponent `b` in leg sizes `(ln n)^b`.
    pub b: u32,
    /// `ℓ0`: growth steps for legs and the maximum length of paths to `L`.
    pub ell0: usize,
    /// `Δ`: vertices of at least this degree form `L`.
    pub high_degree: usize,
    /// `m`: leg radius bound of collected krakens.
    pub m: usize,
    /// `t`: leg size.
    pub leg_size: usize,
    pub anchor_size: usize,
    pub anchor_count: usize,
    /// Minimum distance in `G - L` between low-degree legs, and between
    /// anchors.
    pub separation: usize,
    /// Radius carved around used vertices between collected krakens.
    pub kraken_spacing: usize,
    /// Size of the kraken collection.
    pub kraken_target: usize,
    /// Ball size a free leg must reach in collective expansion.
    pub expand_threshold: usize,
    /// Largest forbidden set accepted by the robust kraken search.
    pub u_cap: usize,
    /// Longest kraken cycle.
    pub k_max: usize,
    /// Minimum degree asked of the extracted expander.
    pub extract_degree: usize,
    pub enforce_degree_hypothesis: bool,
    /// Re-extract an expander before each kraken search in the collection.
    pub reextract: bool,
    pub expansion_trials: usize,
    pub extract_attempts: usize,
    /// Graphs up to this size get exact fixed-length search.
    pub exact_cap: usize,
    /// Node budget of the exact fixed-length search.
    pub path_budget: usize,
    pub max_detours: usize,
    pub ell_min: usize,
    pub ell_max: usize,
    /// Size of the expansions handed to the fixed-length connector.
    pub link_size: usize,
    /// Krakens gathered before giving up on equal cycle lengths.
    pub max_krakens: usize,
    pub q3_cap: usize,
    pub q3_budget: usize,
    /// Root vertices probed for short cycles.
    pub cycle_probes: usize,
    pub collective_rounds: usize,
    pub seed: u64,
}

fn ln(x: f64) -> f64 {
    libm::log(x)
}

fn sat(x: f64) -> usize {
    // `as` saturates, so astronomic values become usize::MAX.
    libm::ceil(x).max(1.0) as usize
}

impl PipelineConfig {
    /// Desk-scale constants.
    pub fn relaxed(params: ExpanderParams) -> Self {
        PipelineConfig {
            mode: ConfigMode::Relaxed,
            params,
            b: 10,
            ell0: 2,
            high_degree: 1 << 20,
            m: 4,
            leg_size: 8,
            anchor_size: 16,
            anchor_count: 8,
            separation: 3,
            kraken_spacing: 2,
            kraken_target: 4,
            expand_threshold: 32,
            u_cap: 1 << 20,
            k_max: 12,
            extract_degree: 2,
            enforce_degree_hypothesis: false,
            reextract: false,
            expansion_trials: 200,
            extract_attempts: 4,
            exact_cap: 64,
            path_budget: 2_000_000,
            max_detours: 64,
            ell_min: 1,
            ell_max: 31,
            link_size: 4,
            max_krakens: 12,
            q3_cap: 40,
            q3_budget: 5_000_000,
            cycle_probes: 64,
            collective_rounds: 16,
            seed: 0,
        }
    }

    /// Every quantity from its formula in `n`.
    pub fn paper(n: usize, params: ExpanderParams, b: u32) -> Self {
        let l = ln(n.max(3) as f64);
        let ll = ln(l).max(0.0);
        let m = 200.0 / params.eps1 * l * l * l;
        let ell0 = libm::pow(ll, 20.0);
        let lb = libm::pow(l, b as f64);
        PipelineConfig {
            mode: ConfigMode::Paper,
            params,
            b,
            ell0: sat(ell0),
            high_degree: sat(libm::exp(ll * ll)),
            m: sat(m),
            leg_size: sat(lb),
            anchor_size: sat(libm::pow(l, 100.0 * b as f64)),
            anchor_count: sat(m * m),
            separation: sat(libm::pow(l, 0.1)),
            kraken_spacing: sat(10.0 * ell0),
            kraken_target: sat(libm::pow(n as f64, 0.125)),
            expand_threshold: sat(libm::pow(l, 200.0 * b as f64)),
            u_cap: sat(libm::pow(l, 2.0 * b as f64)),
            k_max: (libm::floor(l) as usize).max(4),
            extract_degree: params.d,
            enforce_degree_hypothesis: true,
            reextract: true,
            expansion_trials: crate::expander::DEFAULT_TRIALS,
            extract_attempts: 1,
            exact_cap: 64,
            path_budget: 2_000_000,
            max_detours: 64,
            ell_min: sat(libm::pow(l, 7.0)),
            ell_max: (n as f64 / libm::pow(l, 10.0)) as usize,
            link_size: sat(libm::pow(l, 4.0 * b as f64)),
            max_krakens: libm::floor(l) as usize + 1,
            q3_cap: 40,
            q3_budget: 5_000_000,
            cycle_probes: 64,
            collective_rounds: 16,
            seed: 0,
        }
    }

    /// `d/2`, the neighbour count into `U` that puts a vertex in `U0`.
    pub fn u0_degree(&self) -> usize {
        self.params.d.div_ceil(2)
    }
}
