//! Build positive pairs and tree-similarity negatives for a handful of
//! custom descriptions, then print the resulting training samples.
//!
//! ```bash
//! cargo run -p ledgermap --example augment_dataset -- 3
//! ```

use ledgermap::augment::{build_augmented, write_samples, MappingRecord};
use ledgermap::synth::{generate_coa, SynthConfig};
use ledgermap::Catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(4);
    let cfg = SynthConfig {
        n_vertices: 20,
        seed: 1,
        ..Default::default()
    };
    let tree = generate_coa(&cfg, "demo")?;
    let records: Vec<MappingRecord> = tree
        .vertices()
        .step_by(7)
        .map(|v| MappingRecord::new(format!("our {}", tree.label(v).unwrap()), "demo", v))
        .collect();
    let catalog = Catalog::from_trees([tree])?;

    let data = build_augmented(&records, &catalog, k, 42)?;
    println!(
        "{} records -> {} positives + {} negatives (K = {k})",
        data.n_records(),
        data.positives().len(),
        data.negatives().len()
    );
    write_samples(&data.samples, std::io::stdout().lock())?;
    Ok(())
}
