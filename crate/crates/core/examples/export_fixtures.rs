//! Writes every built-in fixture as a model file.
//!
//! cargo run --example export_fixtures -- [dir]   (default: ./fixtures)

use coalition::fixtures;

fn main() -> coalition::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    std::fs::create_dir_all(&dir).map_err(|e| coalition::Error::Io(e.to_string()))?;
    for (name, kind) in fixtures::NAMES {
        let path = format!("{dir}/{name}.json");
        fixtures::document(name).expect("registered").save(&path)?;
        println!("{path} ({kind})");
    }
    Ok(())
}
