//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the distance or metric code under test.

#![allow(dead_code)]

use std::collections::HashMap;

use ledgermap::coa::{CoaDocument, CoaNode};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random tree with `n` nodes, shuffled external ids and distinct labels.
pub fn random_document<R: Rng>(rng: &mut R, n: usize, config_id: &str) -> CoaDocument {
    let mut ids: Vec<String> = (0..n).map(|i| format!("a{}", 1000 + i)).collect();
    ids.shuffle(rng);
    let mut nodes: Vec<CoaNode> = (0..n)
        .map(|i| CoaNode {
            id: ids[i].clone(),
            parent: if i == 0 {
                None
            } else {
                Some(ids[rng.gen_range(0..i)].clone())
            },
            label: format!("account {} {}", i, ["cash", "rent", "fuel", "wages"][i % 4]),
        })
        .collect();
    nodes.shuffle(rng);
    CoaDocument {
        config_id: config_id.to_string(),
        nodes,
    }
}

/// All-pairs path lengths by Floyd-Warshall over the document's edges,
/// keyed by external id.
pub struct FloydWarshall {
    pub index: HashMap<String, usize>,
    pub dist: Vec<Vec<u64>>,
}

impl FloydWarshall {
    pub fn new(doc: &CoaDocument) -> Self {
        const INF: u64 = u64::MAX / 4;
        let n = doc.nodes.len();
        let index: HashMap<String, usize> = doc
            .nodes
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        let mut dist = vec![vec![INF; n]; n];
        for (i, row) in dist.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (i, v) in doc.nodes.iter().enumerate() {
            if let Some(p) = &v.parent {
                let j = index[p];
                dist[i][j] = 1;
                dist[j][i] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = dist[i][k] + dist[k][j];
                    if via < dist[i][j] {
                        dist[i][j] = via;
                    }
                }
            }
        }
        FloydWarshall { index, dist }
    }

    pub fn d(&self, a: &str, b: &str) -> u64 {
        self.dist[self.index[a]][self.index[b]]
    }

    pub fn max(&self) -> u64 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn similarity(&self, a: &str, b: &str) -> f64 {
        1.0 - self.d(a, b) as f64 / self.max() as f64
    }
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}
