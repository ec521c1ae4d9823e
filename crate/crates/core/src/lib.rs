//! Topology-aware mapping of company-specific ledger account descriptions
//! onto standardized charts of accounts (COAs).
//!
//! The pipeline:
//!
//! 1. [`coa`]: a COA is a vertex-labeled tree; path lengths give a distance
//!    matrix and a similarity `1 - d / diameter` between accounts.
//! 2. [`augment`]: each (description, account) record becomes one positive
//!    pair plus `k` negatives scored by tree similarity.
//! 3. [`embed`]: a siamese mean-pooled token embedder trained by cosine
//!    regression on those scores (or by in-batch ranking loss as a baseline),
//!    or vectors computed elsewhere.
//! 4. [`mapper`]: the label with the highest cosine similarity wins.
//! 5. [`eval`]: accuracy, MRR, and tree-distance error measures.
//!
//! [`synth`] generates synthetic COAs and noisy records, and [`experiment`]
//! ties the stages together for train/test runs and K sweeps.

pub mod augment;
pub mod catalog;
pub mod cli;
pub mod coa;
pub mod embed;
mod error;
pub mod eval;
pub mod experiment;
pub mod manifest;
pub mod mapper;
pub mod synth;
mod tsv;

pub use catalog::Catalog;
pub use coa::{CoaTree, VertexId};
pub use error::{Error, Result};
