//! Train/test runs over a catalog of trees and a set of mapping records.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::augment::{build_augmented, build_positive, MappingRecord};
use crate::catalog::Catalog;
use crate::coa::VertexId;
use crate::embed::{
    train_cosine_regression, train_mnrl, Embedder, EmbeddingModel, LossKind, TrainConfig,
    TrainReport, Vocabulary, DEFAULT_DIM,
};
use crate::error::{Error, Result};
use crate::eval::{evaluate, EvalReport};
use crate::mapper::{build_indexes, map_records};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitBy {
    Record,
    Company,
}

impl FromStr for SplitBy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "record" => Ok(SplitBy::Record),
            "company" => Ok(SplitBy::Company),
            other => Err(format!("unknown split granularity {other:?}")),
        }
    }
}

impl fmt::Display for SplitBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitBy::Record => "record",
            SplitBy::Company => "company",
        })
    }
}

/// Number of the `n` shuffled units that go to training. A fraction strictly
/// between 0 and 1 leaves at least one unit on each side when `n >= 2`.
fn train_cut(n: usize, fraction: f64) -> usize {
    let cut = (n as f64 * fraction).round() as usize;
    if n >= 2 && fraction > 0.0 && fraction < 1.0 {
        cut.clamp(1, n - 1)
    } else {
        cut
    }
}

/// Seeded shuffle split; both halves keep the input order.
pub fn split_records(
    records: &[MappingRecord],
    train_fraction: f64,
    seed: u64,
    by: SplitBy,
) -> Result<(Vec<MappingRecord>, Vec<MappingRecord>)> {
    if !(0.0..=1.0).contains(&train_fraction) {
        return Err(Error::InvalidConfig(format!(
            "train fraction must lie in [0, 1], got {train_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let in_train: Vec<bool> = match by {
        SplitBy::Record => {
            let mut order: Vec<usize> = (0..records.len()).collect();
            order.shuffle(&mut rng);
            let cut = train_cut(records.len(), train_fraction);
            let mut mask = vec![false; records.len()];
            for &i in &order[..cut] {
                mask[i] = true;
            }
            mask
        }
        SplitBy::Company => {
            let companies = records
                .iter()
                .map(|r| {
                    r.company.as_deref().ok_or_else(|| {
                        Error::InvalidConfig(format!("record {:?} has no company", r.description))
                    })
                })
                .collect::<Result<BTreeSet<&str>>>()?;
            let mut companies: Vec<&str> = companies.into_iter().collect();
            companies.shuffle(&mut rng);
            let cut = train_cut(companies.len(), train_fraction);
            let train: BTreeSet<&str> = companies[..cut].iter().copied().collect();
            records
                .iter()
                .map(|r| train.contains(r.company.as_deref().unwrap_or_default()))
                .collect()
        }
    };
    let (train, test): (Vec<_>, Vec<_>) =
        records.iter().cloned().zip(in_train).partition(|(_, t)| *t);
    Ok((
        train.into_iter().map(|(r, _)| r).collect(),
        test.into_iter().map(|(r, _)| r).collect(),
    ))
}

/// Tokens of the training descriptions and of every standard label.
pub fn build_vocabulary(train: &[MappingRecord], catalog: &Catalog) -> Vocabulary {
    let descriptions = train.iter().map(|r| r.description.as_str());
    let labels = catalog
        .trees()
        .flat_map(|t| t.labels().iter().map(String::as_str));
    Vocabulary::from_texts(descriptions.chain(labels))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub dim: usize,
    pub seed: u64,
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec {
            dim: DEFAULT_DIM,
            seed: 0,
        }
    }
}

/// Cosine regression on the augmented dataset with `k` negatives per record.
pub fn train_topology(
    train: &[MappingRecord],
    catalog: &Catalog,
    k: usize,
    augment_seed: u64,
    spec: ModelSpec,
    cfg: &TrainConfig,
) -> Result<(EmbeddingModel, TrainReport)> {
    let data = build_augmented(train, catalog, k, augment_seed)?;
    let mut model = EmbeddingModel::new(build_vocabulary(train, catalog), spec.dim, spec.seed)?;
    let cfg = TrainConfig {
        loss: LossKind::CosineRegression,
        ..cfg.clone()
    };
    let report = train_cosine_regression(&mut model, &data.samples, &cfg)?;
    Ok((model, report))
}

/// In-batch ranking loss on positive pairs only.
pub fn train_baseline(
    train: &[MappingRecord],
    catalog: &Catalog,
    spec: ModelSpec,
    cfg: &TrainConfig,
) -> Result<(EmbeddingModel, TrainReport)> {
    let positives = build_positive(train, catalog)?;
    let mut model = EmbeddingModel::new(build_vocabulary(train, catalog), spec.dim, spec.seed)?;
    let cfg = TrainConfig {
        loss: LossKind::MultipleNegativesRanking,
        ..cfg.clone()
    };
    let report = train_mnrl(&mut model, &positives, &cfg)?;
    Ok((model, report))
}

/// Full-ranking evaluation of `provider` on `test`.
pub fn evaluate_provider<E: Embedder + ?Sized>(
    provider: &E,
    catalog: &Catalog,
    test: &[MappingRecord],
    model_id: &str,
    dataset_id: &str,
) -> Result<EvalReport> {
    let indexes = build_indexes(provider, catalog)?;
    let predictions = map_records(&indexes, provider, test, None)?;
    let truths: Vec<VertexId> = test.iter().map(|r| r.true_vertex).collect();
    evaluate(&predictions, &truths, catalog, model_id, dataset_id)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub ks: Vec<usize>,
    pub train_fraction: f64,
    pub split_by: SplitBy,
    pub seed: u64,
    pub model: ModelSpec,
    pub topology: TrainConfig,
    /// Also train the ranking-loss baseline with this config.
    pub baseline: Option<TrainConfig>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ks: vec![5, 10, 15, 20],
            train_fraction: 0.9,
            split_by: SplitBy::Record,
            seed: 0,
            model: ModelSpec::default(),
            topology: TrainConfig::default(),
            baseline: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub reports: Vec<EvalReport>,
    pub baseline: Option<EvalReport>,
    pub n_train: usize,
    pub n_test: usize,
}

impl SweepResult {
    /// True when accuracy never drops as K grows. Reported, not required.
    pub fn accuracy_monotone(&self) -> bool {
        self.reports
            .windows(2)
            .all(|w| w[1].accuracy >= w[0].accuracy)
    }
}

/// One topology model per K on a shared split, optionally with the baseline.
pub fn run_sweep(
    records: &[MappingRecord],
    catalog: &Catalog,
    cfg: &SweepConfig,
    dataset_id: &str,
) -> Result<SweepResult> {
    if cfg.ks.is_empty() {
        return Err(Error::InvalidConfig("no K values to sweep".into()));
    }
    let (train, test) = split_records(records, cfg.train_fraction, cfg.seed, cfg.split_by)?;
    if train.is_empty() || test.is_empty() {
        return Err(Error::InvalidConfig(
            "split left an empty train or test set".into(),
        ));
    }
    let mut reports = Vec::with_capacity(cfg.ks.len());
    for &k in &cfg.ks {
        let topo = TrainConfig {
            seed: cfg.topology.seed ^ cfg.seed,
            ..cfg.topology.clone()
        };
        let (model, _) = train_topology(&train, catalog, k, cfg.seed, cfg.model, &topo)?;
        reports.push(evaluate_provider(
            &model,
            catalog,
            &test,
            &format!("topology@{k}"),
            dataset_id,
        )?);
    }
    let baseline = match &cfg.baseline {
        Some(b) => {
            let b = TrainConfig {
                seed: b.seed ^ cfg.seed,
                ..b.clone()
            };
            let (model, _) = train_baseline(&train, catalog, cfg.model, &b)?;
            Some(evaluate_provider(
                &model,
                catalog,
                &test,
                "mnrl-baseline",
                dataset_id,
            )?)
        }
        None => None,
    };
    Ok(SweepResult {
        reports,
        baseline,
        n_train: train.len(),
        n_test: test.len(),
    })
}
