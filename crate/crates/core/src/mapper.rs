//! Nearest standardized account by cosine similarity.
//!
//! Candidates are restricted to the labels of one COA configuration. Scores
//! sort descending; equal scores go to the lower vertex id.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::augment::MappingRecord;
use crate::catalog::Catalog;
use crate::coa::{CoaTree, VertexId};
use crate::embed::{cosine, Embedder};
use crate::error::{Error, Result};
use crate::tsv;

#[derive(Debug, Clone, PartialEq)]
pub struct IndexEntry {
    pub vertex: VertexId,
    pub label: String,
    pub embedding: Vec<f64>,
}

/// Precomputed label embeddings of one tree.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelIndex {
    config_id: String,
    entries: Vec<IndexEntry>,
}

impl LabelIndex {
    /// Index over precomputed vectors; all must share one dimension.
    pub fn new(config_id: impl Into<String>, entries: Vec<IndexEntry>) -> Result<Self> {
        if let Some(first) = entries.first() {
            let dim = first.embedding.len();
            if let Some(bad) = entries.iter().find(|e| e.embedding.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: bad.embedding.len(),
                });
            }
        }
        Ok(LabelIndex {
            config_id: config_id.into(),
            entries,
        })
    }

    pub fn config_id(&self) -> &str {
        &self.config_id
    }

    pub fn entries(&self) -> &[IndexEntry] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [IndexEntry] {
        &mut self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub vertex: VertexId,
    pub label: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub description: String,
    pub config_id: String,
    pub candidates: Vec<Candidate>,
}

impl Prediction {
    pub fn top(&self) -> &Candidate {
        &self.candidates[0]
    }

    /// 1-based rank of `v`, if it was ranked.
    pub fn rank_of(&self, v: VertexId) -> Option<usize> {
        self.candidates
            .iter()
            .position(|c| c.vertex == v)
            .map(|p| p + 1)
    }
}

pub fn build_index<E: Embedder + ?Sized>(provider: &E, tree: &CoaTree) -> Result<LabelIndex> {
    let entries = tree
        .vertices()
        .zip(tree.labels())
        .map(|(vertex, label)| {
            let embedding = provider
                .embed(label)
                .map_err(|e| Error::InvalidConfig(format!("cannot embed label {label:?}: {e}")))?;
            if embedding.len() != provider.dim() {
                return Err(Error::DimensionMismatch {
                    expected: provider.dim(),
                    got: embedding.len(),
                });
            }
            Ok(IndexEntry {
                vertex,
                label: label.clone(),
                embedding,
            })
        })
        .collect::<Result<_>>()?;
    Ok(LabelIndex {
        config_id: tree.config_id().to_string(),
        entries,
    })
}

fn by_score_then_vertex(a: &Candidate, b: &Candidate) -> Ordering {
    b.score.total_cmp(&a.score).then(a.vertex.cmp(&b.vertex))
}

/// Ranks the index against an already-embedded query.
pub fn rank_embedding(
    index: &LabelIndex,
    description: &str,
    query: &[f64],
    top_k: usize,
) -> Result<Prediction> {
    if top_k == 0 || top_k > index.len() {
        return Err(Error::InvalidConfig(format!(
            "top_k must lie in 1..={}, got {top_k}",
            index.len()
        )));
    }
    let mut candidates: Vec<Candidate> = index
        .entries
        .iter()
        .map(|e| {
            if e.embedding.len() != query.len() {
                return Err(Error::DimensionMismatch {
                    expected: e.embedding.len(),
                    got: query.len(),
                });
            }
            Ok(Candidate {
                vertex: e.vertex,
                label: e.label.clone(),
                score: cosine(query, &e.embedding),
            })
        })
        .collect::<Result<_>>()?;
    candidates.sort_by(by_score_then_vertex);
    candidates.truncate(top_k);
    Ok(Prediction {
        description: description.to_string(),
        config_id: index.config_id.clone(),
        candidates,
    })
}

pub fn map_description<E: Embedder + ?Sized>(
    index: &LabelIndex,
    provider: &E,
    description: &str,
    top_k: usize,
) -> Result<Prediction> {
    let query = provider.embed(description)?;
    rank_embedding(index, description, &query, top_k)
}

/// Label indexes for every tree of a catalog.
pub fn build_indexes<E: Embedder + ?Sized>(
    provider: &E,
    catalog: &Catalog,
) -> Result<Vec<LabelIndex>> {
    catalog.trees().map(|t| build_index(provider, t)).collect()
}

/// Maps each record against the index of its own configuration.
///
/// `top_k = None` ranks every label, as needed for reciprocal-rank metrics.
pub fn map_records<E: Embedder + ?Sized>(
    indexes: &[LabelIndex],
    provider: &E,
    records: &[MappingRecord],
    top_k: Option<usize>,
) -> Result<Vec<Prediction>> {
    records
        .par_iter()
        .map(|r| {
            let index = indexes
                .iter()
                .find(|i| i.config_id == r.config_id)
                .ok_or_else(|| Error::UnknownConfig(r.config_id.clone()))?;
            map_description(
                index,
                provider,
                &r.description,
                top_k.unwrap_or(index.len()),
            )
        })
        .collect()
}

/// Writes `description \t rank \t external_vertex_id \t label \t score`.
pub fn write_predictions<W: Write>(
    predictions: &[Prediction],
    catalog: &Catalog,
    mut out: W,
) -> Result<()> {
    for p in predictions {
        let tree = catalog.tree(&p.config_id)?;
        for (rank, c) in p.candidates.iter().enumerate() {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{:.6}",
                tsv::field(&p.description)?,
                rank + 1,
                tsv::field(tree.external_id(c.vertex)?)?,
                tsv::field(&c.label)?,
                c.score
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coa::{CoaDocument, CoaNode};
    use crate::embed::ExternalEmbeddings;

    fn tree() -> CoaTree {
        let nodes = [
            ("r", None, "assets"),
            ("f", Some("r"), "fixed assets"),
            ("c", Some("r"), "current assets"),
        ]
        .iter()
        .map(|(id, p, l)| CoaNode {
            id: id.to_string(),
            parent: p.map(str::to_string),
            label: l.to_string(),
        })
        .collect();
        CoaTree::from_document(CoaDocument {
            config_id: "c1".into(),
            nodes,
        })
        .unwrap()
    }

    fn vectors() -> ExternalEmbeddings {
        let mut e = ExternalEmbeddings::new(2);
        e.insert("assets", vec![1.0, 1.0]).unwrap();
        e.insert("fixed assets", vec![1.0, 0.0]).unwrap();
        e.insert("current assets", vec![1.0, 0.0]).unwrap();
        e.insert("buildings", vec![0.9, 0.1]).unwrap();
        e
    }

    #[test]
    fn index_has_one_entry_per_vertex() {
        let idx = build_index(&vectors(), &tree()).unwrap();
        assert_eq!(idx.len(), 3);
        assert_eq!(idx, build_index(&vectors(), &tree()).unwrap());

        let mut partial = ExternalEmbeddings::new(2);
        partial.insert("assets", vec![1.0, 0.0]).unwrap();
        let err = build_index(&partial, &tree()).unwrap_err().to_string();
        assert!(err.contains("fixed assets"), "{err}");
    }

    #[test]
    fn ties_go_to_lower_vertex() {
        let e = vectors();
        let idx = build_index(&e, &tree()).unwrap();
        let p = map_description(&idx, &e, "buildings", 3).unwrap();
        assert_eq!(p.candidates.len(), 3);
        assert_eq!(p.top().vertex, VertexId(2));
        assert_eq!(p.candidates[1].vertex, VertexId(3));
        assert_eq!(p.candidates[0].score, p.candidates[1].score);
        assert_eq!(p.rank_of(VertexId(1)), Some(3));
    }

    #[test]
    fn exact_vector_scores_one() {
        let e = vectors();
        let idx = build_index(&e, &tree()).unwrap();
        let p = map_description(&idx, &e, "assets", 1).unwrap();
        assert_eq!(p.top().label, "assets");
        assert_eq!(p.top().score, 1.0);
        assert!(map_description(&idx, &e, "assets", 0).is_err());
        assert!(map_description(&idx, &e, "assets", 4).is_err());
        assert!(map_description(&idx, &e, "goodwill", 1).is_err());
    }

    #[test]
    fn prediction_tsv() {
        let e = vectors();
        let cat = Catalog::from_trees([tree()]).unwrap();
        let idx = build_indexes(&e, &cat).unwrap();
        let recs = [MappingRecord::new("assets", "c1", VertexId(1))];
        let preds = map_records(&idx, &e, &recs, Some(1)).unwrap();
        let mut out = Vec::new();
        write_predictions(&preds, &cat, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "assets\t1\tr\tassets\t1.000000\n"
        );
    }
}
