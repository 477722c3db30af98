use std::path::PathBuf;

/// Failures of the std layer, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("scene {path}: {source}")]
    Scene { path: String, source: toml::de::Error },
    #[error("configuration: {0}")]
    Config(String),
    #[error("resource cap: {0}")]
    Resource(String),
    #[error(transparent)]
    Core(#[from] pmt_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// 2 for bad input, 3 for exceeded caps, 4 for broken invariants.
    pub fn exit_code(&self) -> i32 {
        use pmt_core::Error as C;
        match self {
            Error::Io { .. } | Error::Scene { .. } | Error::Config(_) => 2,
            Error::Resource(_) => 3,
            Error::Core(e) => match e {
                C::DepthOverflow { .. } | C::WordBudget { .. } => 3,
                C::NoRegion => 4,
                _ => 2,
            },
        }
    }
}
