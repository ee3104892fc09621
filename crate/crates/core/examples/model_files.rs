//! Reading and writing model files.
//!
//! cargo run --example model_files -- [path]   (default: fixtures/m1.json)

use coalition::io::{AnyModel, Document};

fn main() -> coalition::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "fixtures/m1.json".into());
    let doc = Document::load(&path)?;
    println!("{path}: a {} model over agents {:?}", doc.model.kind(), doc.model.agents().names());
    if let Some(p) = &doc.provenance {
        println!("  {p}");
    }
    if let AnyModel::Gam(g) = &doc.model {
        let sam = coalition::sam_snm::SingleFirstActionModel::from_gam(g);
        println!("  single-coalition-first: {}", sam.is_ok());
    }
    // Round trip through text.
    let again = Document::from_json(&doc.to_json())?;
    assert_eq!(again, doc);

    // Unknown fields are rejected rather than ignored.
    let mut value = doc.to_value();
    value["colour"] = "blue".into();
    match Document::from_value(value) {
        Err(e) => println!("  extra field: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
