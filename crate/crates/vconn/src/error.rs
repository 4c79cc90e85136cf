use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("instance of size {n} exceeds the oracle guard {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("planted instance generation failed: {0}")]
    GenerationFailed(String),
    #[error("sketches come from different constructions")]
    MixedSketch,
    #[error("terminal expansion undefined: a side holds no terminals")]
    UndefinedExpansion,
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
