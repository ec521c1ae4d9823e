//! Train the topology-aware embedder on synthetic data, save and reload the
//! checkpoint, and map a few unseen descriptions to their top-3 accounts.
//!
//! ```bash
//! cargo run --release -p ledgermap --example train_and_map
//! ```

use ledgermap::embed::{EmbeddingModel, TrainConfig};
use ledgermap::experiment::{split_records, train_topology, ModelSpec, SplitBy};
use ledgermap::mapper::{build_indexes, map_records};
use ledgermap::synth::{generate_suite, SynthConfig};
use ledgermap::Catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (trees, records) = generate_suite(&SynthConfig::default(), 2)?;
    let catalog = Catalog::from_trees(trees)?;
    let (train, test) = split_records(&records, 0.9, 0, SplitBy::Record)?;

    let (model, report) = train_topology(
        &train,
        &catalog,
        20,
        0,
        ModelSpec::default(),
        &TrainConfig::default(),
    )?;
    println!(
        "trained on {} records: first batch loss {:.4}, final epoch mean {:.4}",
        train.len(),
        report.batch_losses[0],
        report.final_epoch_mean()
    );

    let mut buf = Vec::new();
    model.save(&mut buf)?;
    let model = EmbeddingModel::load(buf.as_slice())?;

    let indexes = build_indexes(&model, &catalog)?;
    let sample = &test[..5];
    for (r, p) in sample
        .iter()
        .zip(map_records(&indexes, &model, sample, Some(3))?)
    {
        let truth = catalog.tree(&r.config_id)?.label(r.true_vertex)?;
        println!("\n{:?}  (truth: {truth:?})", r.description);
        for c in &p.candidates {
            println!("  {:.3}  {}", c.score, c.label);
        }
    }
    Ok(())
}
