//! Score hand-made rankings: accuracy, MRR, mean misprediction distance over
//! errors (MMD) and over all instances (MOD), and the MD histogram.
//!
//! ```bash
//! cargo run -p ledgermap --example evaluate_metrics
//! ```

use ledgermap::coa::parse_coa;
use ledgermap::eval::{comparison_table, evaluate, histogram_diff};
use ledgermap::mapper::{Candidate, Prediction};
use ledgermap::{Catalog, VertexId};

const COA: &str = r#"{"config_id": "chain", "nodes": [
  {"id": "a", "parent": null, "label": "assets"},
  {"id": "b", "parent": "a",  "label": "current assets"},
  {"id": "c", "parent": "b",  "label": "cash"},
  {"id": "d", "parent": "c",  "label": "petty cash"},
  {"id": "e", "parent": "d",  "label": "till float"}
]}"#;

/// Ranking that lists `order` (vertex indices) best first.
fn ranked(order: &[usize]) -> Prediction {
    Prediction {
        description: "query".into(),
        config_id: "chain".into(),
        candidates: order
            .iter()
            .enumerate()
            .map(|(r, &v)| Candidate {
                vertex: VertexId::from_index(v),
                label: String::new(),
                score: 1.0 - r as f64 / 10.0,
            })
            .collect(),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::from_trees([parse_coa(COA.as_bytes())?])?;
    let truths = [VertexId::from_index(0); 4];

    // two hits, one miss by 2 edges, one by 4
    let near = [
        ranked(&[0, 1, 2, 3, 4]),
        ranked(&[0, 2, 1, 3, 4]),
        ranked(&[2, 0, 1, 3, 4]),
        ranked(&[4, 3, 0, 1, 2]),
    ];
    // same accuracy, but both misses land one edge away
    let close = [
        ranked(&[0, 1, 2, 3, 4]),
        ranked(&[0, 1, 2, 3, 4]),
        ranked(&[1, 0, 2, 3, 4]),
        ranked(&[1, 2, 0, 3, 4]),
    ];

    let a = evaluate(&near, &truths, &catalog, "model-a", "toy")?;
    let b = evaluate(&close, &truths, &catalog, "model-b", "toy")?;
    print!("{}", comparison_table(&[a.clone(), b.clone()]));
    println!("{a}\n{b}");
    println!("histogram a: {:?}", a.md_histogram);
    println!("histogram b: {:?}", b.md_histogram);
    println!(
        "a - b: {:?}",
        histogram_diff(&a.md_histogram, &b.md_histogram)?
    );
    Ok(())
}
