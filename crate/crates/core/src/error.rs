use alloc::string::String;

/// Errors raised by the constructors and the bounded computations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate Möbius map: |ad - bc| = {det_abs:e}")]
    DegenerateMap { det_abs: f64 },
    #[error("the map is the identity and has no isolated fixed points")]
    IdentityMap,
    #[error("degenerate circline: |B|^2 - AD = {discriminant:e}")]
    DegenerateCircline { discriminant: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid PMT: {0}")]
    InvalidPmt(String),
    #[error("no region claims the point and it is not on the boundary")]
    NoRegion,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("arc count {arcs} exceeds the cap {cap}")]
    DepthOverflow { arcs: usize, cap: usize },
    #[error("{words} words exceed the enumeration cap {cap}")]
    WordBudget { words: u64, cap: u64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
