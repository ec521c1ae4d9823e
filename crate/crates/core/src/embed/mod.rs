//! Text embeddings for ledger descriptions.
//!
//! Two providers implement [`Embedder`]: a trainable siamese model that mean-pools
//! per-token vectors ([`EmbeddingModel`]), and a fixed lookup table of vectors
//! computed elsewhere ([`ExternalEmbeddings`]).

mod external;
pub mod loss;
mod model;
pub mod optim;
mod train;
mod vocab;

pub use external::ExternalEmbeddings;
pub use model::{EmbeddingModel, ModelCheckpoint, DEFAULT_DIM};
pub use train::{train_cosine_regression, train_mnrl, LossKind, TrainConfig, TrainReport};
pub use vocab::{Vocabulary, UNKNOWN_TOKEN};

use crate::error::{Error, Result};

/// Anything that can turn a text into a fixed-width vector.
pub trait Embedder: Sync {
    fn dim(&self) -> usize;
    fn embed(&self, text: &str) -> Result<Vec<f64>>;
}

/// Lowercases and splits on every non-alphanumeric character.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Cosine of the angle between `a` and `b`; 0 when either is the zero vector.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(cosine(a, b))
}

pub(crate) fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    // sqrt(x * x) == x exactly, so identical vectors score exactly 1
    (dot / (na * nb).sqrt()).clamp(-1.0, 1.0)
}
