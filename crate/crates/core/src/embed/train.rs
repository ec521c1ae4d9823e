use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::loss::{self, EncodedPair};
use super::optim::{warmup_linear, warmup_steps, AdamW, AdamWConfig};
use super::EmbeddingModel;
use crate::augment::{Polarity, TrainingSample};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LossKind {
    CosineRegression,
    MultipleNegativesRanking,
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LossKind::CosineRegression => "cosine",
            LossKind::MultipleNegativesRanking => "mnrl",
        })
    }
}

impl FromStr for LossKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cosine" | "cosine-regression" => Ok(LossKind::CosineRegression),
            "mnrl" | "multiple-negatives-ranking" => Ok(LossKind::MultipleNegativesRanking),
            other => Err(format!("unknown loss {other:?} (expected cosine or mnrl)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    /// 1e-2 suits a randomly initialized table; 2e-5 is the usual transformer fine-tuning rate.
    pub learning_rate: f64,
    pub warmup_fraction: f64,
    pub mnrl_scale: f64,
    pub loss: LossKind,
    pub seed: u64,
    pub optimizer: AdamWConfig,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 1,
            batch_size: 64,
            learning_rate: 1e-2,
            warmup_fraction: 0.05,
            mnrl_scale: 20.0,
            loss: LossKind::CosineRegression,
            seed: 0,
            optimizer: AdamWConfig::default(),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.epochs == 0 {
            return bad("epochs must be positive");
        }
        if self.batch_size == 0 {
            return bad("batch_size must be positive");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        if !(0.0..1.0).contains(&self.warmup_fraction) {
            return bad("warmup_fraction must lie in [0, 1)");
        }
        if !(self.mnrl_scale > 0.0 && self.mnrl_scale.is_finite()) {
            return bad("mnrl_scale must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    /// Loss of every batch, measured before its update.
    pub batch_losses: Vec<f64>,
    pub batches_per_epoch: usize,
    pub skipped_batches: usize,
}

impl TrainReport {
    pub fn epoch_mean(&self, epoch: usize) -> f64 {
        let per = self.batches_per_epoch;
        let chunk = &self.batch_losses[epoch * per..(epoch + 1) * per];
        chunk.iter().sum::<f64>() / chunk.len() as f64
    }

    pub fn final_epoch_mean(&self) -> f64 {
        let epochs = self.batch_losses.len() / self.batches_per_epoch.max(1);
        self.epoch_mean(epochs.saturating_sub(1))
    }
}

fn encode_all(model: &EmbeddingModel, samples: &[&TrainingSample]) -> Vec<EncodedPair> {
    samples
        .iter()
        .map(|s| EncodedPair::new(model, &s.description, &s.label, s.target))
        .collect()
}

fn run<F>(
    model: &mut EmbeddingModel,
    pairs: &[EncodedPair],
    cfg: &TrainConfig,
    min_batch: usize,
    loss_fn: F,
) -> Result<TrainReport>
where
    F: Fn(&EmbeddingModel, &[EncodedPair], &mut [f64]) -> f64,
{
    let n = pairs.len();
    let full = n / cfg.batch_size;
    let tail = n % cfg.batch_size;
    let keep_tail = tail >= min_batch;
    let skipped_batches = usize::from(tail > 0 && !keep_tail) * cfg.epochs;
    if skipped_batches > 0 {
        log::warn!("skipping trailing batch of {tail} pair(s) each epoch: no in-batch negatives");
    }
    let batches_per_epoch = full + usize::from(keep_tail);
    if batches_per_epoch == 0 {
        return Err(Error::EmptyDataset);
    }
    let total = batches_per_epoch * cfg.epochs;
    let warmup = warmup_steps(total, cfg.warmup_fraction);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut opt = AdamW::new(model.table().len(), cfg.optimizer);
    let mut grad = vec![0.0; model.table().len()];
    let mut order: Vec<usize> = (0..n).collect();
    let mut batch = Vec::with_capacity(cfg.batch_size);
    let mut batch_losses = Vec::with_capacity(total);

    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(cfg.batch_size).take(batches_per_epoch) {
            let step = batch_losses.len();
            batch.clear();
            batch.extend(chunk.iter().map(|&i| pairs[i].clone()));
            grad.fill(0.0);
            let loss = loss_fn(model, &batch, &mut grad);
            let lr = cfg.learning_rate * warmup_linear(step, warmup, total);
            if !loss.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::NonFiniteLoss { step, loss, lr });
            }
            opt.step(model.table_mut(), &grad, lr);
            batch_losses.push(loss);
        }
    }
    model.set_train_seed(cfg.seed);
    Ok(TrainReport {
        batch_losses,
        batches_per_epoch,
        skipped_batches,
    })
}

/// Fits cosine similarities of (description, label) pairs to their targets
/// by mean squared error.
pub fn train_cosine_regression(
    model: &mut EmbeddingModel,
    samples: &[TrainingSample],
    cfg: &TrainConfig,
) -> Result<TrainReport> {
    cfg.validate()?;
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let refs: Vec<&TrainingSample> = samples.iter().collect();
    let pairs = encode_all(model, &refs);
    run(model, &pairs, cfg, 1, |m, b, g| {
        loss::cosine_regression(m, b, Some(g))
    })
}

/// Trains on positive pairs with in-batch negatives. Negative samples in the
/// input are ignored.
pub fn train_mnrl(
    model: &mut EmbeddingModel,
    positives: &[TrainingSample],
    cfg: &TrainConfig,
) -> Result<TrainReport> {
    cfg.validate()?;
    if cfg.batch_size < 2 {
        return Err(Error::InvalidConfig(
            "multiple-negatives ranking needs batch_size >= 2".into(),
        ));
    }
    let refs: Vec<&TrainingSample> = positives
        .iter()
        .filter(|s| s.polarity == Polarity::Positive)
        .collect();
    if refs.len() < positives.len() {
        log::warn!(
            "ignoring {} negative sample(s) for ranking loss",
            positives.len() - refs.len()
        );
    }
    if refs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let pairs = encode_all(model, &refs);
    let scale = cfg.mnrl_scale;
    run(model, &pairs, cfg, 2, move |m, b, g| {
        loss::multiple_negatives_ranking(m, b, scale, Some(g))
    })
}
