//! Positive, graph-weighted negative, and augmented training sets.
//!
//! Every mapping record `(u, v_u)` yields one positive `(u, label(v_u), 1)`
//! and up to `k` negatives `(u, label(v), s[v_u][v])` with `v` drawn uniformly
//! without replacement from the other vertices of the record's own tree. The
//! augmented dataset lists all positives in record order, then the negatives
//! grouped per record.
//!
//! Each record samples from its own ChaCha stream keyed by `(seed, index)`,
//! so the result does not depend on how the work is scheduled.

use std::fmt;
use std::io::{BufRead, Write};
use std::ops::Range;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::coa::{CoaTree, SimilarityMatrix, VertexId};
use crate::error::{Error, Result};
use crate::tsv;

/// A custom ledger description with its true standardized account.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingRecord {
    pub description: String,
    pub config_id: String,
    pub true_vertex: VertexId,
    /// Optional grouping key for company-level splits.
    pub company: Option<String>,
}

impl MappingRecord {
    pub fn new(
        description: impl Into<String>,
        config_id: impl Into<String>,
        true_vertex: VertexId,
    ) -> Self {
        MappingRecord {
            description: description.into(),
            config_id: config_id.into(),
            true_vertex,
            company: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        })
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "positive" => Ok(Polarity::Positive),
            "negative" => Ok(Polarity::Negative),
            other => Err(format!("unknown polarity {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSample {
    pub description: String,
    pub label: String,
    pub target: f64,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedDataset {
    pub samples: Vec<TrainingSample>,
    pub k: usize,
    pub seed: u64,
    n_positive: usize,
    negative_ranges: Vec<Range<usize>>,
}

impl AugmentedDataset {
    pub fn positives(&self) -> &[TrainingSample] {
        &self.samples[..self.n_positive]
    }

    pub fn negatives(&self) -> &[TrainingSample] {
        &self.samples[self.n_positive..]
    }

    /// The positive of record `i` followed by its negatives.
    pub fn group(&self, i: usize) -> Vec<&TrainingSample> {
        std::iter::once(&self.samples[i])
            .chain(self.samples[self.negative_ranges[i].clone()].iter())
            .collect()
    }

    pub fn n_records(&self) -> usize {
        self.n_positive
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

pub fn build_positive(records: &[MappingRecord], catalog: &Catalog) -> Result<Vec<TrainingSample>> {
    records
        .iter()
        .map(|r| {
            let tree = catalog.tree(&r.config_id)?;
            Ok(TrainingSample {
                description: r.description.clone(),
                label: tree.label(r.true_vertex)?.to_string(),
                target: 1.0,
                polarity: Polarity::Positive,
            })
        })
        .collect()
}

/// Draws `min(k, n - 1)` negatives for one record.
pub fn sample_negatives<R: Rng + ?Sized>(
    record: &MappingRecord,
    tree: &CoaTree,
    sim: &SimilarityMatrix,
    k: usize,
    rng: &mut R,
) -> Result<Vec<TrainingSample>> {
    let truth = record.true_vertex;
    tree.label(truth)?;
    let others = tree.len() - 1;
    let amount = k.min(others);
    let picks = index::sample(rng, others, amount);
    picks
        .into_iter()
        .map(|i| {
            // skip over the true vertex
            let v = if i < truth.index() {
                VertexId::from_index(i)
            } else {
                VertexId::from_index(i + 1)
            };
            Ok(TrainingSample {
                description: record.description.clone(),
                label: tree.label(v)?.to_string(),
                target: sim.get(truth, v),
                polarity: Polarity::Negative,
            })
        })
        .collect()
}

/// RNG stream used for the negatives of record `index`.
pub fn record_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn build_augmented(
    records: &[MappingRecord],
    catalog: &Catalog,
    k: usize,
    seed: u64,
) -> Result<AugmentedDataset> {
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    let positives = build_positive(records, catalog)?;
    let negatives: Vec<Vec<TrainingSample>> = records
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let entry = catalog.get(&r.config_id)?;
            sample_negatives(
                r,
                &entry.tree,
                &entry.similarity,
                k,
                &mut record_rng(seed, i),
            )
        })
        .collect::<Result<_>>()?;

    let truncated = negatives.iter().filter(|n| n.len() < k).count();
    if truncated > 0 {
        log::warn!("{truncated} record(s) drew fewer than k={k} negatives: tree too small");
    }

    let n_positive = positives.len();
    let mut samples = positives;
    let mut negative_ranges = Vec::with_capacity(n_positive);
    for group in negatives {
        let start = samples.len();
        samples.extend(group);
        negative_ranges.push(start..samples.len());
    }
    Ok(AugmentedDataset {
        samples,
        k,
        seed,
        n_positive,
        negative_ranges,
    })
}

/// Reads `description \t config_id \t external_vertex_id [\t company]` lines.
pub fn read_records<R: BufRead>(
    reader: R,
    catalog: &Catalog,
    origin: &str,
) -> Result<Vec<MappingRecord>> {
    let mut records = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: origin.to_string(),
            line: lineno + 1,
            msg,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(err(format!(
                "expected 3 or 4 tab-separated fields, got {}",
                fields.len()
            )));
        }
        if fields[0].trim().is_empty() {
            return Err(err("empty description".into()));
        }
        let tree = catalog.tree(fields[1]).map_err(|e| err(e.to_string()))?;
        let v = tree
            .vertex_by_external(fields[2])
            .map_err(|e| err(e.to_string()))?;
        records.push(MappingRecord {
            description: fields[0].to_string(),
            config_id: fields[1].to_string(),
            true_vertex: v,
            company: fields.get(3).map(|s| s.to_string()),
        });
    }
    Ok(records)
}

pub fn write_records<W: Write>(
    records: &[MappingRecord],
    catalog: &Catalog,
    mut out: W,
) -> Result<()> {
    for r in records {
        let ext = catalog.tree(&r.config_id)?.external_id(r.true_vertex)?;
        write!(
            out,
            "{}\t{}\t{}",
            tsv::field(&r.description)?,
            tsv::field(&r.config_id)?,
            tsv::field(ext)?
        )?;
        if let Some(c) = &r.company {
            write!(out, "\t{}", tsv::field(c)?)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Writes `description \t label \t target \t polarity` with 6-digit targets.
pub fn write_samples<W: Write>(samples: &[TrainingSample], mut out: W) -> Result<()> {
    for s in samples {
        writeln!(
            out,
            "{}\t{}\t{:.6}\t{}",
            tsv::field(&s.description)?,
            tsv::field(&s.label)?,
            s.target,
            s.polarity
        )?;
    }
    Ok(())
}

pub fn read_samples<R: BufRead>(reader: R, origin: &str) -> Result<Vec<TrainingSample>> {
    let mut samples = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: origin.to_string(),
            line: lineno + 1,
            msg,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(err(format!(
                "expected 4 tab-separated fields, got {}",
                fields.len()
            )));
        }
        let target: f64 = fields[2]
            .parse()
            .map_err(|_| err(format!("bad target {:?}", fields[2])))?;
        if !(0.0..=1.0).contains(&target) {
            return Err(err(format!("target {target} outside [0, 1]")));
        }
        samples.push(TrainingSample {
            description: fields[0].to_string(),
            label: fields[1].to_string(),
            target,
            polarity: fields[3].parse().map_err(err)?,
        });
    }
    Ok(samples)
}
