//! Parse a small chart of accounts and print its path-length and
//! similarity matrices plus a few misprediction distances.
//!
//! ```bash
//! cargo run -p ledgermap --example coa_distances
//! ```

use ledgermap::coa::{distance_matrix, parse_coa, similarity_matrix};

const COA: &str = r#"{
  "config_id": "retail",
  "nodes": [
    {"id": "1000", "parent": null,   "label": "balance sheet"},
    {"id": "1100", "parent": "1000", "label": "current assets"},
    {"id": "1110", "parent": "1100", "label": "cash"},
    {"id": "1120", "parent": "1100", "label": "accounts receivable"},
    {"id": "1200", "parent": "1000", "label": "fixed assets"},
    {"id": "1210", "parent": "1200", "label": "vehicles"},
    {"id": "1220", "parent": "1200", "label": "office equipment"}
  ]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = parse_coa(COA.as_bytes())?;
    let d = distance_matrix(&tree);
    let s = similarity_matrix(&d)?;
    println!(
        "{}: {} accounts, diameter {}",
        tree.config_id(),
        tree.len(),
        d.max()
    );

    for a in tree.vertices() {
        let row: Vec<String> = tree.vertices().map(|b| d.get(a, b).to_string()).collect();
        println!("{:>20}  {}", tree.label(a)?, row.join(" "));
    }
    println!();
    for a in tree.vertices() {
        let row: Vec<String> = tree
            .vertices()
            .map(|b| format!("{:.2}", s.get(a, b)))
            .collect();
        println!("{:>20}  {}", tree.label(a)?, row.join(" "));
    }

    let cash = tree.vertex_by_external("1110")?;
    for other in ["1120", "1210", "1000"] {
        let v = tree.vertex_by_external(other)?;
        println!(
            "predicting {:?} for cash is {} edge(s) off",
            tree.label(v)?,
            tree.misprediction_distance(v, cash)?
        );
    }
    Ok(())
}
