//! Run configuration: a flat `key = value` TOML file.
//!
//! `mode` picks the base (`relaxed` constants or `paper` formulas in `n`),
//! `eps1`, `eps2`, `d` and `b` set the parameters, and any other key
//! overrides the constant of the same name.

use pillar_core::config::PipelineConfig;
use pillar_core::expander::ExpanderParams;
use serde::Deserialize;

use crate::error::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Relaxed,
    #[serde(alias = "paper-formula")]
    Paper,
}

macro_rules! run_config {
    ($($field:ident: $ty:ty),* $(,)?) => {
        #[derive(Debug, Clone, Default, PartialEq, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct RunConfig {
            #[serde(default)]
            pub mode: Mode,
            pub seed: Option<u64>,
            pub eps1: Option<f64>,
            pub eps2: Option<f64>,
            pub d: Option<usize>,
            pub b: Option<u32>,
            $(pub $field: Option<$ty>,)*
        }

        impl RunConfig {
            fn apply_overrides(&self, c: &mut PipelineConfig) {
                $(if let Some(v) = self.$field {
                    c.$field = v;
                })*
            }
        }
    };
}

run_config! {
    ell0: usize,
    high_degree: usize,
    m: usize,
    leg_size: usize,
    anchor_size: usize,
    anchor_count: usize,
    separation: usize,
    kraken_spacing: usize,
    kraken_target: usize,
    expand_threshold: usize,
    u_cap: usize,
    k_max: usize,
    extract_degree: usize,
    enforce_degree_hypothesis: bool,
    reextract: bool,
    expansion_trials: usize,
    extract_attempts: usize,
    exact_cap: usize,
    path_budget: usize,
    max_detours: usize,
    ell_min: usize,
    ell_max: usize,
    link_size: usize,
    max_krakens: usize,
    q3_cap: usize,
    q3_budget: usize,
    cycle_probes: usize,
    collective_rounds: usize,
}

pub const DEFAULT_EPS1: f64 = 0.1;
pub const DEFAULT_EPS2: f64 = 0.2;
pub const DEFAULT_D: usize = 4;
pub const DEFAULT_B: u32 = 10;

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, ToolError> {
        toml::from_str(text).map_err(|e| ToolError::Config(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<RunConfig, ToolError> {
        let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn params(&self) -> Result<ExpanderParams, ToolError> {
        ExpanderParams::new(
            self.eps1.unwrap_or(DEFAULT_EPS1),
            self.eps2.unwrap_or(DEFAULT_EPS2),
            self.d.unwrap_or(DEFAULT_D),
        )
        .map_err(|e| ToolError::Config(e.to_string()))
    }

    /// The pipeline constants for a graph on `n` vertices. `seed`
    /// overrides the file's seed when given.
    pub fn resolve(&self, n: usize, seed: Option<u64>) -> Result<PipelineConfig, ToolError> {
        let params = self.params()?;
        let mut c = match self.mode {
            Mode::Relaxed => PipelineConfig::relaxed(params),
            Mode::Paper => PipelineConfig::paper(n, params, self.b.unwrap_or(DEFAULT_B)),
        };
        if let Some(b) = self.b {
            c.b = b;
        }
        self.apply_overrides(&mut c);
        c.seed = seed.or(self.seed).unwrap_or(0);
        Ok(c)
    }
}
