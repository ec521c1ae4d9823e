//! Synthetic charts of accounts and noisy custom descriptions.
//!
//! Trees grow by attaching each new vertex to a uniformly chosen earlier
//! vertex that still has room for a child and sits above the depth limit. Every vertex gets a unique term;
//! its label is `"<parent term> / <own term>"` (just the term for the root),
//! so siblings share words the way real sub-accounts do.
//!
//! Records are noisy copies of labels: synonym swaps, abbreviations and
//! dropped words, each applied per word with its own probability.

mod terms;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::augment::MappingRecord;
use crate::coa::{CoaDocument, CoaNode, CoaTree, VertexId};
use crate::error::{Error, Result};

pub use terms::{ABBREVIATIONS, HEADS, MODIFIERS, SYNONYMS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordPool {
    pub heads: Vec<String>,
    pub modifiers: Vec<String>,
}

impl Default for WordPool {
    fn default() -> Self {
        WordPool {
            heads: HEADS.iter().map(|s| s.to_string()).collect(),
            modifiers: MODIFIERS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl WordPool {
    /// Every bare head plus every `modifier head` combination.
    pub fn terms(&self) -> Vec<String> {
        let mut out = self.heads.clone();
        for m in &self.modifiers {
            for h in &self.heads {
                if m != h {
                    out.push(format!("{m} {h}"));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub n_vertices: usize,
    pub max_children: usize,
    /// Deepest level a vertex may occupy (root is level 0).
    pub max_depth: usize,
    pub word_pool: WordPool,
    pub synonym_p: f64,
    pub drop_p: f64,
    pub abbreviation_p: f64,
    pub records_per_vertex: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_vertices: 150,
            max_children: 6,
            max_depth: 3,
            word_pool: WordPool::default(),
            synonym_p: 0.3,
            drop_p: 0.2,
            abbreviation_p: 0.1,
            records_per_vertex: 4,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn noiseless(mut self) -> Self {
        self.synonym_p = 0.0;
        self.drop_p = 0.0;
        self.abbreviation_p = 0.0;
        self
    }

    /// Largest tree the shape limits allow.
    pub fn capacity(&self) -> usize {
        let mut total: usize = 1;
        let mut level: usize = 1;
        for _ in 0..self.max_depth {
            level = level.saturating_mul(self.max_children);
            total = total.saturating_add(level);
        }
        total
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_vertices < 2 {
            return Err(Error::DegenerateTree(self.n_vertices));
        }
        if self.max_children == 0 || self.max_depth == 0 {
            return Err(Error::InvalidConfig(
                "max_children and max_depth must be positive".into(),
            ));
        }
        if self.capacity() < self.n_vertices {
            return Err(Error::InvalidConfig(format!(
                "at most {} vertices fit under max_children={} and max_depth={}",
                self.capacity(),
                self.max_children,
                self.max_depth
            )));
        }
        for (name, p) in [
            ("synonym_p", self.synonym_p),
            ("drop_p", self.drop_p),
            ("abbreviation_p", self.abbreviation_p),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {p}"
                )));
            }
        }
        Ok(())
    }
}

const TREE_STREAM: u64 = 0;
const RECORD_STREAM_BASE: u64 = 1;

fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn generate_coa(cfg: &SynthConfig, config_id: &str) -> Result<CoaTree> {
    cfg.validate()?;
    let terms = cfg.word_pool.terms();
    if terms.len() < cfg.n_vertices {
        return Err(Error::WordPoolTooSmall {
            needed: cfg.n_vertices,
            available: terms.len(),
        });
    }
    let mut rng = stream(cfg.seed, TREE_STREAM);
    let own: Vec<&String> = index::sample(&mut rng, terms.len(), cfg.n_vertices)
        .into_iter()
        .map(|i| &terms[i])
        .collect();

    let mut child_count = vec![0usize; cfg.n_vertices];
    let mut depth = vec![0usize; cfg.n_vertices];
    let mut open: Vec<usize> = vec![0];
    let mut nodes = Vec::with_capacity(cfg.n_vertices);
    nodes.push(CoaNode {
        id: "1".into(),
        parent: None,
        label: own[0].clone(),
    });
    for v in 1..cfg.n_vertices {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot];
        child_count[parent] += 1;
        if child_count[parent] == cfg.max_children {
            open.swap_remove(slot);
        }
        depth[v] = depth[parent] + 1;
        if depth[v] < cfg.max_depth {
            open.push(v);
        }
        nodes.push(CoaNode {
            id: (v + 1).to_string(),
            parent: Some((parent + 1).to_string()),
            label: format!("{} / {}", own[parent], own[v]),
        });
    }
    CoaTree::from_document(CoaDocument {
        config_id: config_id.to_string(),
        nodes,
    })
}

fn synonym(word: &str) -> Option<&'static str> {
    SYNONYMS.iter().find_map(|&(a, b)| {
        if a == word {
            Some(b)
        } else if b == word {
            Some(a)
        } else {
            None
        }
    })
}

fn abbreviate(word: &str) -> String {
    if let Some(&(_, short)) = ABBREVIATIONS.iter().find(|(w, _)| *w == word) {
        return short.to_string();
    }
    if word.chars().count() > 5 {
        word.chars().take(4).collect()
    } else {
        word.to_string()
    }
}

/// One noisy rendering of `label`; the label itself when no noise fires.
pub fn perturb<R: Rng + ?Sized>(label: &str, cfg: &SynthConfig, rng: &mut R) -> String {
    let words: Vec<&str> = label.split_whitespace().filter(|w| *w != "/").collect();
    let mut changed = false;
    let mut out: Vec<String> = Vec::with_capacity(words.len());
    for w in &words {
        let mut word = w.to_string();
        if rng.gen_bool(cfg.synonym_p) {
            if let Some(s) = synonym(w) {
                word = s.to_string();
                changed = true;
            }
        }
        if rng.gen_bool(cfg.abbreviation_p) {
            let short = abbreviate(&word);
            changed |= short != word;
            word = short;
        }
        out.push(word);
    }
    let keep: Vec<bool> = out.iter().map(|_| !rng.gen_bool(cfg.drop_p)).collect();
    if keep.iter().any(|k| !k) {
        changed = true;
        let mut kept: Vec<String> = out
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(w, _)| w.clone())
            .collect();
        if kept.is_empty() {
            kept.push(out.choose(rng).expect("labels are non-empty").clone());
        }
        out = kept;
    }
    if changed {
        out.join(" ")
    } else {
        label.to_string()
    }
}

/// `records_per_vertex` noisy records for every vertex, in vertex order.
///
/// Record `j` of each vertex is attributed to company `co<j>`.
pub fn generate_records(tree: &CoaTree, cfg: &SynthConfig) -> Result<Vec<MappingRecord>> {
    cfg.validate()?;
    let mut records = Vec::with_capacity(tree.len() * cfg.records_per_vertex);
    for (i, label) in tree.labels().iter().enumerate() {
        let mut rng = stream(cfg.seed, RECORD_STREAM_BASE + i as u64);
        for j in 0..cfg.records_per_vertex {
            records.push(MappingRecord {
                description: perturb(label, cfg, &mut rng),
                config_id: tree.config_id().to_string(),
                true_vertex: VertexId::from_index(i),
                company: Some(format!("co{j}")),
            });
        }
    }
    Ok(records)
}

/// `n_configs` trees (`cfg1`, `cfg2`, ...) with their records, each from a
/// seed derived from `cfg.seed`.
pub fn generate_suite(
    cfg: &SynthConfig,
    n_configs: usize,
) -> Result<(Vec<CoaTree>, Vec<MappingRecord>)> {
    let mut trees = Vec::with_capacity(n_configs);
    let mut records = Vec::new();
    for c in 0..n_configs {
        let sub = SynthConfig {
            seed: cfg.seed.wrapping_mul(1_000_003).wrapping_add(c as u64),
            ..cfg.clone()
        };
        let tree = generate_coa(&sub, &format!("cfg{}", c + 1))?;
        records.extend(generate_records(&tree, &sub)?);
        trees.push(tree);
    }
    Ok((trees, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::tokenize;

    #[test]
    fn small_tree_is_valid_and_bounded() {
        let cfg = SynthConfig {
            n_vertices: 7,
            max_children: 2,
            seed: 4,
            ..Default::default()
        };
        let t = generate_coa(&cfg, "s").unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.edges().count(), 6);
        for v in t.vertices() {
            assert!(t.children(v).unwrap().len() <= 2);
            assert!(t.depth(v).unwrap() <= 4);
        }
        assert_eq!(t, generate_coa(&cfg, "s").unwrap());
    }

    #[test]
    fn rejects_bad_configs() {
        let one = SynthConfig {
            n_vertices: 1,
            ..Default::default()
        };
        assert!(matches!(
            generate_coa(&one, "x"),
            Err(Error::DegenerateTree(1))
        ));
        let tiny = SynthConfig {
            n_vertices: 10,
            word_pool: WordPool {
                heads: vec!["cash".into(), "bank".into()],
                modifiers: vec!["petty".into()],
            },
            ..Default::default()
        };
        assert!(matches!(
            generate_coa(&tiny, "x"),
            Err(Error::WordPoolTooSmall {
                needed: 10,
                available: 4
            })
        ));
        let cramped = SynthConfig {
            n_vertices: 8,
            max_children: 2,
            max_depth: 2,
            ..Default::default()
        };
        assert_eq!(cramped.capacity(), 7);
        assert!(generate_coa(&cramped, "x").is_err());
        let p = SynthConfig {
            drop_p: 1.5,
            ..Default::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn zero_noise_copies_labels() {
        let cfg = SynthConfig {
            n_vertices: 100,
            records_per_vertex: 3,
            ..Default::default()
        }
        .noiseless();
        let t = generate_coa(&cfg, "z").unwrap();
        let recs = generate_records(&t, &cfg).unwrap();
        assert_eq!(recs.len(), 300);
        for r in &recs {
            assert_eq!(r.description, t.label(r.true_vertex).unwrap());
        }
    }

    #[test]
    fn full_drop_shortens_multiword_labels() {
        let cfg = SynthConfig {
            n_vertices: 40,
            drop_p: 1.0,
            synonym_p: 0.0,
            abbreviation_p: 0.0,
            ..Default::default()
        };
        let t = generate_coa(&cfg, "d").unwrap();
        for r in generate_records(&t, &cfg).unwrap() {
            let label = t.label(r.true_vertex).unwrap();
            if tokenize(label).len() > 1 {
                assert!(tokenize(&r.description).len() < tokenize(label).len());
                assert!(r.description.len() < label.len());
            }
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let cfg = SynthConfig {
            n_vertices: 20,
            seed: 8,
            ..Default::default()
        };
        let a = generate_suite(&cfg, 3).unwrap();
        let b = generate_suite(&cfg, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.0.len(), 3);
        assert_eq!(a.1.len(), 3 * 20 * 4);
        assert_ne!(a.0[0].labels(), a.0[1].labels());
    }

    #[test]
    fn synonym_table_has_about_a_hundred_pairs() {
        assert!(SYNONYMS.len() >= 100);
        assert_eq!(synonym("vehicles"), Some("motor cars"));
        assert_eq!(synonym("creditors"), Some("payables"));
        assert_eq!(abbreviate("buildings"), "bldgs");
        assert_eq!(abbreviate("goodwill"), "good");
        assert_eq!(abbreviate("cash"), "cash");
    }
}
