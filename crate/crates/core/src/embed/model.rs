use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Embedder, Vocabulary};
use crate::error::{Error, Result};

pub const DEFAULT_DIM: usize = 64;
const INIT_RANGE: f64 = 0.05;

/// Mean-pooled token embedding table shared by both sides of a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    vocab: Vocabulary,
    dim: usize,
    table: Vec<f64>,
    normalize: bool,
    model_seed: u64,
    train_seed: Option<u64>,
}

/// On-disk JSON form of an [`EmbeddingModel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelCheckpoint {
    pub vocabulary: Vocabulary,
    pub dim: usize,
    pub normalize: bool,
    pub model_seed: u64,
    pub train_seed: Option<u64>,
    /// Row-major `|vocabulary| x dim`.
    pub table: Vec<f64>,
}

impl EmbeddingModel {
    /// Rows drawn uniformly from `[-0.05, 0.05]`.
    pub fn new(vocab: Vocabulary, dim: usize, seed: u64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidConfig(format!(
                "embedding dim must be >= 2, got {dim}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = (0..vocab.len() * dim)
            .map(|_| rng.gen_range(-INIT_RANGE..=INIT_RANGE))
            .collect();
        Ok(EmbeddingModel {
            vocab,
            dim,
            table,
            normalize: false,
            model_seed: seed,
            train_seed: None,
        })
    }

    pub fn from_table(vocab: Vocabulary, dim: usize, table: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidConfig(format!(
                "embedding dim must be >= 2, got {dim}"
            )));
        }
        if table.len() != vocab.len() * dim {
            return Err(Error::DimensionMismatch {
                expected: vocab.len() * dim,
                got: table.len(),
            });
        }
        if table.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig(
                "embedding table has non-finite entries".into(),
            ));
        }
        Ok(EmbeddingModel {
            vocab,
            dim,
            table,
            normalize: false,
            model_seed: 0,
            train_seed: None,
        })
    }

    /// When set, [`embed_text`](Self::embed_text) returns unit-length vectors.
    pub fn with_normalization(mut self, normalize: bool) -> Self {
        self.normalize = normalize;
        self
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut [f64] {
        &mut self.table
    }

    pub fn row(&self, token: usize) -> &[f64] {
        &self.table[token * self.dim..(token + 1) * self.dim]
    }

    pub fn model_seed(&self) -> u64 {
        self.model_seed
    }

    pub fn train_seed(&self) -> Option<u64> {
        self.train_seed
    }

    pub(crate) fn set_train_seed(&mut self, seed: u64) {
        self.train_seed = Some(seed);
    }

    pub fn encode(&self, text: &str) -> Vec<usize> {
        self.vocab.encode(text)
    }

    /// Mean of the rows of `ids`; the zero vector for no tokens.
    pub fn pool(&self, ids: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        if ids.is_empty() {
            return out;
        }
        for &id in ids {
            for (o, x) in out.iter_mut().zip(self.row(id)) {
                *o += x;
            }
        }
        let n = ids.len() as f64;
        out.iter_mut().for_each(|o| *o /= n);
        out
    }

    pub fn embed_text(&self, text: &str) -> Vec<f64> {
        let mut v = self.pool(&self.encode(text));
        if self.normalize {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                v.iter_mut().for_each(|x| *x /= norm);
            }
        }
        v
    }

    pub fn to_checkpoint(&self) -> ModelCheckpoint {
        ModelCheckpoint {
            vocabulary: self.vocab.clone(),
            dim: self.dim,
            normalize: self.normalize,
            model_seed: self.model_seed,
            train_seed: self.train_seed,
            table: self.table.clone(),
        }
    }

    pub fn from_checkpoint(ckpt: ModelCheckpoint) -> Result<Self> {
        let mut model = EmbeddingModel::from_table(ckpt.vocabulary, ckpt.dim, ckpt.table)?;
        model.normalize = ckpt.normalize;
        model.model_seed = ckpt.model_seed;
        model.train_seed = ckpt.train_seed;
        Ok(model)
    }

    pub fn save<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer(writer, &self.to_checkpoint())?;
        Ok(())
    }

    pub fn load<R: Read>(reader: R) -> Result<Self> {
        Self::from_checkpoint(serde_json::from_reader(reader)?)
    }
}

impl Embedder for EmbeddingModel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, text: &str) -> Result<Vec<f64>> {
        Ok(self.embed_text(text))
    }
}
