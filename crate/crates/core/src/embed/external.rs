use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::Embedder;
use crate::error::{Error, Result};
use crate::tsv;

/// Precomputed vectors keyed by exact text.
///
/// File layout: a `dim <D>` header line, then `text \t x1 x2 ... xD` per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ExternalEmbeddings {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl ExternalEmbeddings {
    pub fn new(dim: usize) -> Self {
        ExternalEmbeddings {
            dim,
            vectors: HashMap::new(),
        }
    }

    pub fn insert(&mut self, text: impl Into<String>, vector: Vec<f64>) -> Result<()> {
        let text = text.into();
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: vector.len(),
            });
        }
        if self.vectors.contains_key(&text) {
            return Err(Error::DuplicateKey(text));
        }
        self.vectors.insert(text, vector);
        Ok(())
    }

    pub fn read<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let err = |line: usize, msg: String| Error::Parse {
            path: origin.to_string(),
            line,
            msg,
        };
        let header = match lines.next() {
            Some((_, l)) => l?,
            None => return Err(err(1, "missing \"dim <D>\" header".into())),
        };
        let dim = header
            .strip_prefix("dim ")
            .and_then(|d| d.trim().parse::<usize>().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| err(1, format!("bad header {header:?}, expected \"dim <D>\"")))?;

        let mut store = ExternalEmbeddings::new(dim);
        for (i, line) in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let (key, values) = line
                .split_once('\t')
                .ok_or_else(|| err(i + 1, "expected text, tab, values".into()))?;
            let vector = values
                .split_whitespace()
                .map(|x| x.parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .ok_or_else(|| err(i + 1, "non-numeric value".into()))?;
            store.insert(key, vector)?;
        }
        Ok(store)
    }

    /// Writes entries sorted by key.
    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "dim {}", self.dim)?;
        let mut keys: Vec<&String> = self.vectors.keys().collect();
        keys.sort();
        for k in keys {
            write!(out, "{}\t", tsv::field(k)?)?;
            let v = &self.vectors[k];
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    write!(out, " ")?;
                }
                write!(out, "{x}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn get(&self, text: &str) -> Result<&[f64]> {
        self.vectors
            .get(text)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownText(text.to_string()))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

impl Embedder for ExternalEmbeddings {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed(&self, text: &str) -> Result<Vec<f64>> {
        self.get(text).map(<[f64]>::to_vec)
    }
}
