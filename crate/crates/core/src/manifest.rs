//! Run manifests written next to every command's outputs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub seeds: BTreeMap<String, u64>,
    pub version: String,
    pub duration_secs: f64,
}

/// Collects a manifest while a command runs.
#[derive(Debug)]
pub struct ManifestBuilder {
    manifest: RunManifest,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        ManifestBuilder {
            manifest: RunManifest {
                command: command.to_string(),
                config,
                inputs: Vec::new(),
                outputs: Vec::new(),
                seeds: BTreeMap::new(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                duration_secs: 0.0,
            },
            started: Instant::now(),
        }
    }

    pub fn input(&mut self, path: impl AsRef<Path>) -> &mut Self {
        self.manifest.inputs.push(path.as_ref().to_path_buf());
        self
    }

    pub fn output(&mut self, path: impl AsRef<Path>) -> &mut Self {
        self.manifest.outputs.push(path.as_ref().to_path_buf());
        self
    }

    pub fn seed(&mut self, name: &str, value: u64) -> &mut Self {
        self.manifest.seeds.insert(name.to_string(), value);
        self
    }

    /// Writes `<out_dir>/<command>.manifest.json` and returns its path.
    pub fn finish(mut self, out_dir: &Path) -> Result<PathBuf> {
        self.manifest.duration_secs = self.started.elapsed().as_secs_f64();
        let path = out_dir.join(format!("{}.manifest.json", self.manifest.command));
        serde_json::to_writer_pretty(BufWriter::new(File::create(&path)?), &self.manifest)?;
        Ok(path)
    }
}
