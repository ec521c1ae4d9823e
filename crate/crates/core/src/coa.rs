//! Charts of accounts as vertex-labeled trees.
//!
//! A [`CoaTree`] holds one COA configuration: vertices numbered densely
//! `1..=n` in input order, undirected parent/child edges and a unique label
//! (the standardized ledger account description) per vertex. From a tree we
//! derive the all-pairs path-length matrix ([`DistanceMatrix`]) and the
//! normalized similarity `s_ij = 1 - d_ij / max(D)` ([`SimilarityMatrix`]),
//! where `max(D)` is the tree diameter.
//!
//! The on-disk format is a JSON document:
//!
//! ```json
//! {"config_id": "cfg1",
//!  "nodes": [{"id": "A", "parent": null, "label": "assets"},
//!            {"id": "A1", "parent": "A", "label": "fixed assets"}]}
//! ```

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense 1-based vertex identifier within one tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn from_index(index: usize) -> Self {
        VertexId(index as u32 + 1)
    }

    /// Zero-based position for matrix indexing.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// One node of the COA JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoaNode {
    pub id: String,
    pub parent: Option<String>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoaDocument {
    pub config_id: String,
    pub nodes: Vec<CoaNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoaTree {
    config_id: String,
    external_ids: Vec<String>,
    labels: Vec<String>,
    parents: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depths: Vec<u32>,
    by_label: HashMap<String, usize>,
    by_external: HashMap<String, usize>,
}

impl CoaTree {
    /// Validates a document and numbers its vertices in node order.
    pub fn from_document(doc: CoaDocument) -> Result<Self> {
        let n = doc.nodes.len();
        if n < 2 {
            return Err(Error::DegenerateTree(n));
        }

        let mut by_external = HashMap::with_capacity(n);
        let mut by_label: HashMap<String, usize> = HashMap::with_capacity(n);
        for (i, node) in doc.nodes.iter().enumerate() {
            if node.label.trim().is_empty() {
                return Err(Error::EmptyLabel(node.id.clone()));
            }
            if by_external.insert(node.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertexId(node.id.clone()));
            }
            if let Some(&first) = by_label.get(&node.label) {
                return Err(Error::DuplicateLabel {
                    label: node.label.clone(),
                    first: doc.nodes[first].id.clone(),
                    second: node.id.clone(),
                });
            }
            by_label.insert(node.label.clone(), i);
        }

        let mut parents = Vec::with_capacity(n);
        let mut roots = Vec::new();
        for (i, node) in doc.nodes.iter().enumerate() {
            match &node.parent {
                None => {
                    roots.push(i);
                    parents.push(None);
                }
                Some(p) => match by_external.get(p) {
                    Some(&pi) => parents.push(Some(pi)),
                    None => {
                        return Err(Error::UnknownParent {
                            node: node.id.clone(),
                            parent: p.clone(),
                        })
                    }
                },
            }
        }
        match roots.len() {
            // every node has a parent, so following parents must loop
            0 => return Err(Error::Cycle(doc.nodes[0].id.clone())),
            1 => {}
            r => return Err(Error::Forest(r)),
        }

        let mut children = vec![Vec::new(); n];
        for (i, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(i);
            }
        }

        // A single root with n-1 parent links is a tree iff everything is reachable.
        let mut depths = vec![u32::MAX; n];
        let root = roots[0];
        depths[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &c in &children[v] {
                depths[c] = depths[v] + 1;
                queue.push_back(c);
            }
        }
        if let Some(stuck) = depths.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Cycle(doc.nodes[stuck].id.clone()));
        }

        let (external_ids, labels) = doc.nodes.into_iter().map(|n| (n.id, n.label)).unzip();
        Ok(CoaTree {
            config_id: doc.config_id,
            external_ids,
            labels,
            parents,
            children,
            depths,
            by_label,
            by_external,
        })
    }

    pub fn to_document(&self) -> CoaDocument {
        let nodes = (0..self.len())
            .map(|i| CoaNode {
                id: self.external_ids[i].clone(),
                parent: self.parents[i].map(|p| self.external_ids[p].clone()),
                label: self.labels[i].clone(),
            })
            .collect();
        CoaDocument {
            config_id: self.config_id.clone(),
            nodes,
        }
    }

    pub fn write_json<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, &self.to_document())?;
        Ok(())
    }

    pub fn config_id(&self) -> &str {
        &self.config_id
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.len()).map(VertexId::from_index)
    }

    /// Undirected edges as (parent, child) pairs.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (VertexId::from_index(p), VertexId::from_index(i))))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 >= 1 && v.index() < self.len()
    }

    fn check(&self, v: VertexId) -> Result<usize> {
        if self.contains(v) {
            Ok(v.index())
        } else {
            Err(Error::UnknownVertex(format!(
                "{v} in config {:?}",
                self.config_id
            )))
        }
    }

    pub fn label(&self, v: VertexId) -> Result<&str> {
        Ok(&self.labels[self.check(v)?])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn external_id(&self, v: VertexId) -> Result<&str> {
        Ok(&self.external_ids[self.check(v)?])
    }

    pub fn vertex_by_external(&self, id: &str) -> Result<VertexId> {
        self.by_external
            .get(id)
            .map(|&i| VertexId::from_index(i))
            .ok_or_else(|| Error::UnknownVertex(format!("{id:?} in config {:?}", self.config_id)))
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.by_label.get(label).map(|&i| VertexId::from_index(i))
    }

    pub fn parent(&self, v: VertexId) -> Result<Option<VertexId>> {
        Ok(self.parents[self.check(v)?].map(VertexId::from_index))
    }

    pub fn children(&self, v: VertexId) -> Result<Vec<VertexId>> {
        Ok(self.children[self.check(v)?]
            .iter()
            .map(|&c| VertexId::from_index(c))
            .collect())
    }

    pub fn depth(&self, v: VertexId) -> Result<u32> {
        Ok(self.depths[self.check(v)?])
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.parents[i]
            .into_iter()
            .chain(self.children[i].iter().copied())
    }

    fn bfs_row(&self, source: usize, row: &mut [u32]) {
        row.fill(u32::MAX);
        row[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if row[w] == u32::MAX {
                    row[w] = row[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    /// Longest path length, found by two sweeps.
    pub fn diameter(&self) -> u32 {
        let mut row = vec![0; self.len()];
        self.bfs_row(0, &mut row);
        let far = argmax(&row);
        self.bfs_row(far, &mut row);
        row[argmax(&row)]
    }

    /// Path length between the predicted and the true vertex.
    ///
    /// Walks both vertices up to their lowest common ancestor, so it does not
    /// need a precomputed [`DistanceMatrix`].
    pub fn misprediction_distance(&self, predicted: VertexId, truth: VertexId) -> Result<u32> {
        let mut a = self.check(predicted)?;
        let mut b = self.check(truth)?;
        let mut steps = 0;
        while self.depths[a] > self.depths[b] {
            a = self.parents[a].expect("non-root has parent");
            steps += 1;
        }
        while self.depths[b] > self.depths[a] {
            b = self.parents[b].expect("non-root has parent");
            steps += 1;
        }
        while a != b {
            a = self.parents[a].expect("non-root has parent");
            b = self.parents[b].expect("non-root has parent");
            steps += 2;
        }
        Ok(steps)
    }
}

fn argmax(row: &[u32]) -> usize {
    row.iter()
        .enumerate()
        .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Parses and validates a COA JSON document.
pub fn parse_coa<R: Read>(source: R) -> Result<CoaTree> {
    let doc: CoaDocument =
        serde_json::from_reader(source).map_err(|e| Error::MalformedCoa(e.to_string()))?;
    CoaTree::from_document(doc)
}

/// Shortest-path edge counts between every pair of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
    max_d: u32,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Global maximum entry, i.e. the tree diameter.
    pub fn max(&self) -> u32 {
        self.max_d
    }

    pub fn get(&self, a: VertexId, b: VertexId) -> u32 {
        self.data[a.index() * self.n + b.index()]
    }

    pub fn row(&self, v: VertexId) -> &[u32] {
        let i = v.index();
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }
}

/// One BFS per source vertex; rows are filled in parallel.
pub fn distance_matrix(tree: &CoaTree) -> DistanceMatrix {
    let n = tree.len();
    let mut data = vec![0u32; n * n];
    data.par_chunks_mut(n.max(1))
        .enumerate()
        .for_each(|(source, row)| tree.bfs_row(source, row));
    let max_d = data.iter().copied().max().unwrap_or(0);
    DistanceMatrix { n, data, max_d }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, a: VertexId, b: VertexId) -> f64 {
        self.data[a.index() * self.n + b.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// `s_ij = 1 - d_ij / max(D)` with the global maximum of `D`.
pub fn similarity_matrix(d: &DistanceMatrix) -> Result<SimilarityMatrix> {
    if d.max_d == 0 {
        return Err(Error::DegenerateTree(d.n));
    }
    let max = f64::from(d.max_d);
    let data = d.data.iter().map(|&x| 1.0 - f64::from(x) / max).collect();
    Ok(SimilarityMatrix { n: d.n, data })
}

/// Free-function form of [`CoaTree::misprediction_distance`].
pub fn misprediction_distance(tree: &CoaTree, predicted: VertexId, truth: VertexId) -> Result<u32> {
    tree.misprediction_distance(predicted, truth)
}

/// Writes a square matrix as TSV with external ids as row and column headers.
pub fn write_matrix_tsv<W: Write, T: fmt::Display>(
    tree: &CoaTree,
    values: &[T],
    mut out: W,
) -> Result<()> {
    let n = tree.len();
    write!(out, "id")?;
    for id in &tree.external_ids {
        write!(out, "\t{id}")?;
    }
    writeln!(out)?;
    for (i, id) in tree.external_ids.iter().enumerate() {
        write!(out, "{id}")?;
        for v in &values[i * n..(i + 1) * n] {
            write!(out, "\t{v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
