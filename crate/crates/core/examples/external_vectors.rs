//! Map descriptions with precomputed vectors instead of a trained model.
//!
//! Any encoder can produce the vector file: one `dim D` header line, then
//! `text<TAB>v1 v2 ... vD` per text.
//!
//! ```bash
//! cargo run -p ledgermap --example external_vectors
//! ```

use ledgermap::coa::parse_coa;
use ledgermap::embed::ExternalEmbeddings;
use ledgermap::mapper::{build_index, map_description};

const COA: &str = r#"{"config_id": "ops", "nodes": [
  {"id": "6000", "parent": null,   "label": "operating expenses"},
  {"id": "6100", "parent": "6000", "label": "vehicle costs"},
  {"id": "6110", "parent": "6100", "label": "fuel"},
  {"id": "6200", "parent": "6000", "label": "premises"},
  {"id": "6210", "parent": "6200", "label": "rent"}
]}"#;

const VECTORS: &str = "dim 4
operating expenses\t0.5 0.5 0.5 0.5
vehicle costs\t0.9 0.1 0.0 0.3
fuel\t1.0 0.0 0.1 0.2
premises\t0.0 0.9 0.4 0.1
rent\t0.1 1.0 0.2 0.0
diesel for vans\t0.95 0.05 0.1 0.25
office lease\t0.1 1.0 0.2 0.0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = parse_coa(COA.as_bytes())?;
    let vectors = ExternalEmbeddings::read(VECTORS.as_bytes(), "inline")?;
    let index = build_index(&vectors, &tree)?;
    for query in ["diesel for vans", "office lease"] {
        let p = map_description(&index, &vectors, query, tree.len())?;
        println!("{query}:");
        for c in &p.candidates {
            println!(
                "  {:.6}  {} ({})",
                c.score,
                c.label,
                tree.external_id(c.vertex)?
            );
        }
    }
    // unknown texts are an error rather than a silent fallback
    assert!(map_description(&index, &vectors, "bank charges", 1).is_err());
    Ok(())
}
