//! Unraveling a pointed model into a tree that agrees with it on every
//! formula up to the unraveling depth.

use coalition::fixtures;
use coalition::formula::parse;
use coalition::harness::Semantics;
use coalition::io::Document;
use coalition::represent::unravel_with_map;

fn main() -> coalition::Result<()> {
    let g = fixtures::lock();
    let u = unravel_with_map(&g, 0, 2)?;
    println!("{} states, tree-like: {:?}", u.model.n_states(), coalition::clear_tree::is_treelike_gam(&u.model));
    for s in 0..u.model.n_states().min(4) {
        println!("  {}", u.model.carrier().name(s));
    }
    let (orig, tree) = (Semantics::of(&g.clone().into()), Semantics::of(&u.model.clone().into()));
    for text in ["[{a}]cf", "[{b}][{a}]~cb", "[AG][AG](cf & cb)"] {
        let f = parse(text)?;
        println!("{text:<18} {} / {}", orig.holds(0, &f)?, tree.holds(0, &f)?);
    }
    let json = Document::new(u.model).to_json();
    println!("as a model file: {} lines of JSON", json.lines().count());
    Ok(())
}
