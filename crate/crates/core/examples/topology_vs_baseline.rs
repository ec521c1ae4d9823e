//! Topology-aware cosine regression vs. an in-batch ranking baseline.
//!
//! Six synthetic COAs of ~150 accounts, noisy custom descriptions, a 90/10
//! split. Each seed trains both models with the same default regime and
//! prints Acc/MRR/MMD/MOD plus the misprediction-distance histogram
//! difference, then the medians.
//!
//! ```bash
//! cargo run --release -p ledgermap --example topology_vs_baseline -- 5
//! ```

use ledgermap::embed::TrainConfig;
use ledgermap::eval::{comparison_table, histogram_diff, EvalReport};
use ledgermap::experiment::{
    evaluate_provider, split_records, train_baseline, train_topology, ModelSpec, SplitBy,
};
use ledgermap::synth::{generate_suite, SynthConfig};
use ledgermap::Catalog;

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_seeds: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(5);
    let k = 20;
    let mut topo: Vec<EvalReport> = Vec::new();
    let mut base: Vec<EvalReport> = Vec::new();

    for seed in 0..n_seeds {
        let synth = SynthConfig {
            n_vertices: 150,
            seed,
            ..Default::default()
        };
        let (trees, records) = generate_suite(&synth, 6)?;
        let catalog = Catalog::from_trees(trees)?;
        let (train, test) = split_records(&records, 0.9, seed, SplitBy::Record)?;
        let spec = ModelSpec { dim: 64, seed };
        let cfg = TrainConfig {
            seed,
            ..Default::default()
        };

        let (model, _) = train_topology(&train, &catalog, k, seed, spec, &cfg)?;
        let t = evaluate_provider(
            &model,
            &catalog,
            &test,
            &format!("topology@{k}"),
            "synthetic",
        )?;

        let (model, _) = train_baseline(&train, &catalog, spec, &cfg)?;
        let b = evaluate_provider(&model, &catalog, &test, "mnrl-baseline", "synthetic")?;

        println!("seed {seed}");
        print!("{}", comparison_table(&[t.clone(), b.clone()]));
        println!(
            "MD histogram difference (topology - baseline): {:?}\n",
            histogram_diff(&t.md_histogram, &b.md_histogram)?
        );
        topo.push(t);
        base.push(b);
    }

    let med = |rs: &[EvalReport], f: fn(&EvalReport) -> f64| median(rs.iter().map(f).collect());
    println!("median over {n_seeds} seeds");
    println!(
        "  topology@{k}: Acc {:.2}  MOD {:.3}",
        100.0 * med(&topo, |r| r.accuracy),
        med(&topo, |r| r.mod_)
    );
    println!(
        "  baseline   : Acc {:.2}  MOD {:.3}",
        100.0 * med(&base, |r| r.accuracy),
        med(&base, |r| r.mod_)
    );
    Ok(())
}
