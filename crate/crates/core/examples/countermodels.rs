//! Searching small generated models for a state refuting a formula.

use coalition::formula::parse;
use coalition::harness::{countermodel_document, find_countermodel, GenSpec, Kind};

fn main() -> coalition::Result<()> {
    let spec = GenSpec::random(Kind::Gam, 0, 2000);
    for text in ["[{a,b}]T", "([{a}]p & [{b}]q) -> [{a,b}](p & q)", "~[{}]F", "p | ~p"] {
        match find_countermodel(&parse(text)?, &spec)? {
            Some((model, s)) => {
                let doc = countermodel_document(&model, s, &parse(text)?);
                println!("{text}: refuted at {} of a {}-state {} model", model.carrier().name(s), model.carrier().len(), model.kind());
                let _ = doc.to_json();
            }
            None => println!("{text}: no countermodel in the stream"),
        }
    }
    Ok(())
}
