//! Accuracy, mean reciprocal rank and tree-distance error measures.
//!
//! The misprediction distance (MD) of an instance is the path length in its
//! COA tree between the top-ranked and the true vertex; 0 when correct.
//! MMD averages MD over mispredicted instances only, MOD over all instances.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::coa::VertexId;
use crate::error::{Error, Result};
use crate::mapper::Prediction;

pub type Histogram = BTreeMap<u32, u64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub mrr: f64,
    /// Absent when nothing was mispredicted.
    pub mmd: Option<f64>,
    #[serde(rename = "mod")]
    pub mod_: f64,
    pub md_histogram: Histogram,
    pub n_instances: u64,
    pub n_mispredictions: u64,
    pub model_id: String,
    pub dataset_id: String,
}

impl EvalReport {
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        Ok(serde_json::from_reader(input)?)
    }
}

/// Two-decimal summary: Acc and MRR as percentages, MMD and MOD in edges.
impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mmd = self
            .mmd
            .map_or_else(|| "-".to_string(), |m| format!("{m:.2}"));
        write!(
            f,
            "{}: Acc {:.2}  MRR {:.2}  MMD {}  MOD {:.2}  (n={})",
            self.model_id,
            100.0 * self.accuracy,
            100.0 * self.mrr,
            mmd,
            self.mod_,
            self.n_instances
        )
    }
}

fn aligned(predictions: &[Prediction], truths: &[VertexId]) -> Result<()> {
    if predictions.len() != truths.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            truths: truths.len(),
        });
    }
    if predictions.is_empty() {
        return Err(Error::NoInstances);
    }
    Ok(())
}

pub fn accuracy(predictions: &[Prediction], truths: &[VertexId]) -> Result<f64> {
    aligned(predictions, truths)?;
    let hits = predictions
        .iter()
        .zip(truths)
        .filter(|(p, &t)| p.top().vertex == t)
        .count();
    Ok(hits as f64 / predictions.len() as f64)
}

/// Needs full rankings: the truth must appear in every prediction.
pub fn mrr(predictions: &[Prediction], truths: &[VertexId]) -> Result<f64> {
    aligned(predictions, truths)?;
    let mut total = 0.0;
    for (p, &t) in predictions.iter().zip(truths) {
        let rank = p.rank_of(t).ok_or_else(|| Error::TruthNotRanked {
            description: p.description.clone(),
            vertex: t.0 as usize,
        })?;
        total += 1.0 / rank as f64;
    }
    Ok(total / predictions.len() as f64)
}

/// Misprediction distance of every instance, in input order.
pub fn misprediction_distances(
    predictions: &[Prediction],
    truths: &[VertexId],
    catalog: &Catalog,
) -> Result<Vec<u32>> {
    if predictions.len() != truths.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            truths: truths.len(),
        });
    }
    predictions
        .iter()
        .zip(truths)
        .map(|(p, &t)| {
            catalog
                .tree(&p.config_id)?
                .misprediction_distance(p.top().vertex, t)
        })
        .collect()
}

pub fn mmd(
    predictions: &[Prediction],
    truths: &[VertexId],
    catalog: &Catalog,
) -> Result<Option<f64>> {
    aligned(predictions, truths)?;
    let mds = misprediction_distances(predictions, truths, catalog)?;
    let wrong: Vec<u32> = mds.into_iter().filter(|&d| d > 0).collect();
    if wrong.is_empty() {
        return Ok(None);
    }
    let sum: u64 = wrong.iter().map(|&d| u64::from(d)).sum();
    Ok(Some(sum as f64 / wrong.len() as f64))
}

pub fn mod_(predictions: &[Prediction], truths: &[VertexId], catalog: &Catalog) -> Result<f64> {
    aligned(predictions, truths)?;
    let mds = misprediction_distances(predictions, truths, catalog)?;
    let sum: u64 = mds.iter().map(|&d| u64::from(d)).sum();
    Ok(sum as f64 / mds.len() as f64)
}

pub fn md_histogram(
    predictions: &[Prediction],
    truths: &[VertexId],
    catalog: &Catalog,
) -> Result<Histogram> {
    let mut hist = Histogram::new();
    for d in misprediction_distances(predictions, truths, catalog)? {
        *hist.entry(d).or_default() += 1;
    }
    Ok(hist)
}

/// Per-distance `a - b`; both histograms must cover the same number of instances.
pub fn histogram_diff(a: &Histogram, b: &Histogram) -> Result<BTreeMap<u32, i64>> {
    let (ta, tb) = (a.values().sum::<u64>(), b.values().sum::<u64>());
    if ta != tb {
        return Err(Error::HistogramTotals(ta, tb));
    }
    let mut diff = BTreeMap::new();
    for d in a.keys().chain(b.keys()) {
        let ca = a.get(d).copied().unwrap_or(0) as i64;
        let cb = b.get(d).copied().unwrap_or(0) as i64;
        diff.insert(*d, ca - cb);
    }
    Ok(diff)
}

/// All measures at once; MMD and MOD come from the same histogram.
pub fn evaluate(
    predictions: &[Prediction],
    truths: &[VertexId],
    catalog: &Catalog,
    model_id: &str,
    dataset_id: &str,
) -> Result<EvalReport> {
    let accuracy = accuracy(predictions, truths)?;
    let mrr = mrr(predictions, truths)?;
    let md_histogram = md_histogram(predictions, truths, catalog)?;
    let n_instances = predictions.len() as u64;
    let n_correct = md_histogram.get(&0).copied().unwrap_or(0);
    let n_mispredictions = n_instances - n_correct;
    let md_sum: u64 = md_histogram.iter().map(|(&d, &c)| u64::from(d) * c).sum();
    let mmd = (n_mispredictions > 0).then(|| md_sum as f64 / n_mispredictions as f64);
    Ok(EvalReport {
        accuracy,
        mrr,
        mmd,
        mod_: md_sum as f64 / n_instances as f64,
        md_histogram,
        n_instances,
        n_mispredictions,
        model_id: model_id.to_string(),
        dataset_id: dataset_id.to_string(),
    })
}

/// Fixed-width comparison table, one row per report.
pub fn comparison_table(reports: &[EvalReport]) -> String {
    let mut out = format!(
        "{:<24} {:>8} {:>8} {:>8} {:>8}\n",
        "model", "Acc", "MRR", "MMD", "MOD"
    );
    for r in reports {
        let mmd = r.mmd.map_or_else(|| "-".to_string(), |m| format!("{m:.2}"));
        out.push_str(&format!(
            "{:<24} {:>8.2} {:>8.2} {:>8} {:>8.2}\n",
            r.model_id,
            100.0 * r.accuracy,
            100.0 * r.mrr,
            mmd,
            r.mod_
        ));
    }
    out
}
