//! Generate a synthetic suite, write it to a directory the CLI can consume,
//! and show a few noisy descriptions next to their labels.
//!
//! ```bash
//! cargo run -p ledgermap --example synth_pipeline -- /tmp/ledger-demo
//! ledgermap validate --coa /tmp/ledger-demo/coa_cfg1.json
//! ```

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use ledgermap::augment::write_records;
use ledgermap::experiment::{split_records, SplitBy};
use ledgermap::synth::{generate_suite, SynthConfig};
use ledgermap::Catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "synth-out".into()),
    );
    fs::create_dir_all(&dir)?;
    let cfg = SynthConfig {
        n_vertices: 60,
        seed: 5,
        ..Default::default()
    };
    let (trees, records) = generate_suite(&cfg, 3)?;
    for t in &trees {
        t.write_json(BufWriter::new(File::create(
            dir.join(format!("coa_{}.json", t.config_id())),
        )?))?;
        println!(
            "{}: {} accounts, diameter {}",
            t.config_id(),
            t.len(),
            t.diameter()
        );
    }
    let catalog = Catalog::from_trees(trees)?;

    let (train, test) = split_records(&records, 0.9, cfg.seed, SplitBy::Company)?;
    write_records(
        &records,
        &catalog,
        BufWriter::new(File::create(dir.join("records.tsv"))?),
    )?;
    write_records(
        &train,
        &catalog,
        BufWriter::new(File::create(dir.join("train.tsv"))?),
    )?;
    write_records(
        &test,
        &catalog,
        BufWriter::new(File::create(dir.join("test.tsv"))?),
    )?;
    println!(
        "{} records, {} train / {} test (split by company)",
        records.len(),
        train.len(),
        test.len()
    );

    for r in records.iter().step_by(records.len() / 8) {
        let label = catalog.tree(&r.config_id)?.label(r.true_vertex)?;
        println!("  {:<40} <- {label}", r.description);
    }
    println!("wrote {}", dir.display());
    Ok(())
}
