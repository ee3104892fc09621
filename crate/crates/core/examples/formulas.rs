//! Parsing, rendering, modal depth and axiom instances.

use coalition::formula::{instantiate_axiom, parse, render, AxiomSchema, CoalitionExpr};

fn main() -> coalition::Result<()> {
    for text in ["[{a,b}](p & ~q)", "[{}]p -> [{a}]p", "[{a}][AG]T", "p -> q -> p"] {
        let f = parse(text)?;
        println!("{text:<22} => {:<28} depth {}", render(&f), f.modal_depth());
        assert_eq!(parse(&render(&f))?, f);
    }
    match parse("[{a}(p") {
        Err(e) => println!("malformed input: {e}"),
        Ok(_) => unreachable!(),
    }

    let a = CoalitionExpr::of(["a"]);
    let b = CoalitionExpr::of(["b"]);
    let (p, q) = (parse("p")?, parse("q")?);
    println!("A-NAAA   {}", instantiate_axiom(AxiomSchema::Naaa, &[CoalitionExpr::empty()], &[])?);
    println!("A-IA     {}", instantiate_axiom(AxiomSchema::Ia, &[a.clone(), b], &[p.clone(), q.clone()])?);
    println!("A-Det    {}", instantiate_axiom(AxiomSchema::Det, &[a.clone()], &[p, q])?);
    // Side conditions are enforced.
    let bad = instantiate_axiom(AxiomSchema::Ia, &[a.clone(), a], &[parse("p")?, parse("q")?]);
    println!("A-IA with overlapping coalitions: {}", bad.unwrap_err());
    Ok(())
}
