//! A set of COA configurations with their distance and similarity matrices.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use crate::coa::{
    distance_matrix, parse_coa, similarity_matrix, CoaTree, DistanceMatrix, SimilarityMatrix,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct TreeEntry {
    pub tree: CoaTree,
    pub distances: DistanceMatrix,
    pub similarity: SimilarityMatrix,
}

impl TreeEntry {
    pub fn new(tree: CoaTree) -> Result<Self> {
        let distances = distance_matrix(&tree);
        let similarity = similarity_matrix(&distances)?;
        Ok(TreeEntry {
            tree,
            distances,
            similarity,
        })
    }
}

/// Trees keyed by config id, iterated in id order.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, TreeEntry>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_trees<I: IntoIterator<Item = CoaTree>>(trees: I) -> Result<Self> {
        let mut catalog = Catalog::new();
        for tree in trees {
            catalog.insert(tree)?;
        }
        Ok(catalog)
    }

    pub fn load<P: AsRef<Path>>(paths: &[P]) -> Result<Self> {
        let mut catalog = Catalog::new();
        for path in paths {
            let file = File::open(path.as_ref())?;
            catalog.insert(parse_coa(BufReader::new(file))?)?;
        }
        Ok(catalog)
    }

    pub fn insert(&mut self, tree: CoaTree) -> Result<()> {
        let id = tree.config_id().to_string();
        if self.entries.contains_key(&id) {
            return Err(Error::InvalidConfig(format!("config {id:?} loaded twice")));
        }
        self.entries.insert(id, TreeEntry::new(tree)?);
        Ok(())
    }

    pub fn get(&self, config_id: &str) -> Result<&TreeEntry> {
        self.entries
            .get(config_id)
            .ok_or_else(|| Error::UnknownConfig(config_id.to_string()))
    }

    pub fn tree(&self, config_id: &str) -> Result<&CoaTree> {
        Ok(&self.get(config_id)?.tree)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TreeEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn trees(&self) -> impl Iterator<Item = &CoaTree> {
        self.entries.values().map(|e| &e.tree)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
