//! Train one topology-aware model per K on a shared split and compare them
//! with the ranking-loss baseline.
//!
//! ```bash
//! cargo run --release -p ledgermap --example k_sweep
//! ```

use ledgermap::embed::TrainConfig;
use ledgermap::eval::comparison_table;
use ledgermap::experiment::{run_sweep, SweepConfig};
use ledgermap::synth::{generate_suite, SynthConfig};
use ledgermap::Catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (trees, records) = generate_suite(&SynthConfig::default(), 6)?;
    let catalog = Catalog::from_trees(trees)?;
    let cfg = SweepConfig {
        baseline: Some(TrainConfig::default()),
        ..Default::default()
    };
    let result = run_sweep(&records, &catalog, &cfg, "synthetic")?;

    let mut all = result.reports.clone();
    all.extend(result.baseline.clone());
    println!("{} train / {} test records", result.n_train, result.n_test);
    print!("{}", comparison_table(&all));
    println!(
        "accuracy non-decreasing in K: {}",
        result.accuracy_monotone()
    );
    Ok(())
}
