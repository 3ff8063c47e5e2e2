use thiserror::Error;

/// Everything that makes a subcommand exit with status 2.
#[derive(Debug, Error)]
pub enum ToolError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph {
        path: String,
        #[source]
        source: pillar_core::graph::ParseError,
    },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("config: {0}")]
    Config(String),
}

impl ToolError {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        ToolError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
