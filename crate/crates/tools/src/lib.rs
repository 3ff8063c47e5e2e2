//! Edge-list files, JSON certificates, run configuration and the `pillar`
//! command line, on top of `pillar-core`.

pub mod bench;
pub mod cert;
pub mod cli;
pub mod error;
pub mod runconfig;

pub use error::ToolError;
