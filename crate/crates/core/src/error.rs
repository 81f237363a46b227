use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("division by an identically zero expression")]
    ZeroDenominator,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("invalid graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown leaf `{0}`")]
    UnknownLeaf(String),
    #[error("cannot mutate at a loop (edge `{0}`)")]
    LoopEdge(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("non-integral period coefficient at k = {k}: {value}")]
    NonIntegral { k: usize, value: String },
    #[error("period methods disagree at k = {k}: brute {brute}, tqft {tqft}")]
    Mismatch { k: usize, brute: String, tqft: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
