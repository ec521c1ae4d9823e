use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] io::Error),

    #[error("malformed COA document: {0}")]
    MalformedCoa(String),

    #[error("duplicate label {label:?} (vertices {first:?} and {second:?})")]
    DuplicateLabel {
        label: String,
        first: String,
        second: String,
    },

    #[error("duplicate vertex id {0:?}")]
    DuplicateVertexId(String),

    #[error("node {node:?} references unknown parent {parent:?}")]
    UnknownParent { node: String, parent: String },

    #[error("parent links of {0:?} form a cycle")]
    Cycle(String),

    #[error("COA has {0} roots; exactly one node must have a null parent")]
    Forest(usize),

    #[error("node {0:?} has an empty label")]
    EmptyLabel(String),

    #[error("degenerate tree: at least two vertices are required, got {0}")]
    DegenerateTree(usize),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("unknown COA configuration {0:?}")]
    UnknownConfig(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("field contains a tab or newline: {0:?}")]
    UnencodableField(String),

    #[error("embedding dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("duplicate embedding key {0:?}")]
    DuplicateKey(String),

    #[error("no embedding for text {0:?}")]
    UnknownText(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("empty training dataset")]
    EmptyDataset,

    #[error("non-finite loss {loss} at step {step} (lr {lr:e})")]
    NonFiniteLoss { step: usize, loss: f64, lr: f64 },

    #[error("length mismatch: {predictions} predictions, {truths} truths")]
    LengthMismatch { predictions: usize, truths: usize },

    #[error("true vertex {vertex} absent from ranking of {description:?}")]
    TruthNotRanked { description: String, vertex: usize },

    #[error("no evaluation instances")]
    NoInstances,

    #[error("histogram totals differ: {0} vs {1}")]
    HistogramTotals(u64, u64),

    #[error("word pool too small: {needed} unique terms requested, {available} available")]
    WordPoolTooSmall { needed: usize, available: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
